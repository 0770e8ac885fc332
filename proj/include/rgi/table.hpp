#pragma once

#include "npoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace rgi {

enum class Family { Extended, Refined, VeryRefined, KP };

inline const char *family_name(Family f)
{
  switch (f) {
  case Family::Extended: return "extended";
  case Family::Refined: return "refined";
  case Family::VeryRefined: return "very-refined";
  default: return "kp";
  }
}

struct CorrelatorKey
{
  Family family = Family::Extended;
  int genus = 0;
  std::vector<int> taus;   // ascending; theta indices for KP
  std::vector<int> sigmas; // ascending, extended only
  std::vector<int> kbar;   // descending, very refined only
  int b = 0;               // refined only
  int k = 0;               // number of sigma insertions

  auto tie() const { return std::tie(family, genus, taus, sigmas, kbar, b, k); }
  friend bool operator<(const CorrelatorKey &x, const CorrelatorKey &y) { return x.tie() < y.tie(); }
  friend bool operator==(const CorrelatorKey &x, const CorrelatorKey &y) { return x.tie() == y.tie(); }

  int degree() const
  {
    int d = 0;
    if (family == Family::KP) {
      for (int a : taus)
        d += a;
      return d;
    }
    for (int a : taus)
      d += 2 * a + 1;
    if (family == Family::Extended)
      for (int c : sigmas)
        d += 2 * c + 2;
    else
      d += 2 * k;
    return d;
  }

  std::string render() const
  {
    std::ostringstream os;
    os << family_name(family) << " g=" << genus << " <";
    bool first = true;
    auto sep = [&] {
      if (!first)
        os << " ";
      first = false;
    };
    for (int a : taus) {
      sep();
      os << (family == Family::KP ? "theta" : "tau") << a;
    }
    for (int c : sigmas) {
      sep();
      os << "sigma" << c;
    }
    os << ">";
    if (family == Family::Refined)
      os << " k=" << k << " b=" << b;
    if (family == Family::VeryRefined) {
      os << " kbar=(";
      for (std::size_t i = 0; i < kbar.size(); ++i)
        os << (i ? "," : "") << kbar[i];
      os << ")";
    }
    return os.str();
  }
};

struct CorrelatorTable
{
  std::map<CorrelatorKey, NPoly> entries;
  int degree_cap = 0;
  int dart_bound = 0;
  long long graphs = 0;

  NPoly get(const CorrelatorKey &k) const
  {
    auto it = entries.find(k);
    return it == entries.end() ? NPoly() : it->second;
  }

  void merge(const CorrelatorTable &o)
  {
    for (auto &kv : o.entries)
      entries[kv.first] = kv.second;
    degree_cap = std::max(degree_cap, o.degree_cap);
    dart_bound = std::max(dart_bound, o.dart_bound);
    graphs += o.graphs;
  }
};

// N-degree at most g+1 and parity opposite to g.
inline bool parity_law_holds(const NPoly &p, int g)
{
  if (p.is_zero())
    return true;
  if (p.degree() > g + 1)
    return false;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0 && (i + g) % 2 == 0)
      return false;
  return true;
}

} // namespace rgi
