#pragma once

#include "combinat.hpp"
#include "enumerate.hpp"
#include "laurent.hpp"
#include "table.hpp"

#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

namespace rgi {

struct SpuriousMonomial : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Contribution
{
  std::vector<EdgeFactor> factors;
  int n_power = 0;
  std::vector<int> s_monomial; // exceptional profile, or free marks per boundary
  Rational scalar = 1;
};

inline Rational component_constant(const RibbonGraph &G, const TraceResult &t)
{
  switch (G.kind) {
  case GraphKind::Ghost: return Rational(1, 2);
  case GraphKind::Exceptional: return Rational(1) / Rational(factorial(t.v - 1));
  default: return pow2(t.e_internal - t.v_interior - t.v_b3 - t.v_marked + t.b);
  }
}

inline Rational component_constant(const RibbonGraph &G) { return component_constant(G, trace(G)); }

// Edge factors of one component. Boundary edges are merged across illegal
// node sides into segments; a segment with m illegal sides on face f weighs
// Catalan(m) * lambda_f^{-2m-1}.
inline std::vector<EdgeFactor> edge_factors(const RibbonGraph &G, const TraceResult &t,
                                            const std::vector<EndRole> &roles)
{
  std::vector<EdgeFactor> out;
  if (G.kind != GraphKind::Regular)
    return out;
  const int n = G.dart_count();
  auto label = [&](int d) {
    int f = G.tag[d].label;
    if (G.tag[d].kind != FaceKind::Face || f <= 0)
      throw std::invalid_argument("edge adjacent to no labeled face");
    return f;
  };
  for (int d = 0; d < n; ++d) {
    int a = G.alpha[d];
    if (d > a)
      continue;
    if (G.tag[d].kind == FaceKind::Boundary || G.tag[a].kind == FaceKind::Boundary)
      continue;
    out.push_back(EdgeFactor::inverse_sum(label(d), label(a)));
  }
  for (auto &cyc : t.boundaries) {
    const int L = static_cast<int>(cyc.size());
    // vertex between edge of cyc[i] and edge of cyc[i+1] is the vertex of cyc[i+1]
    auto splits = [&](int i) {
      int v = t.vertex_of[cyc[(i + 1) % L]];
      return !(t.vertex_marked[v] && roles[v] == EndRole::Illegal);
    };
    int start = -1;
    for (int i = 0; i < L; ++i)
      if (splits(i)) {
        start = (i + 1) % L;
        break;
      }
    if (start < 0)
      throw std::logic_error("boundary cycle made only of illegal sides");
    int i = start;
    for (int done = 0; done < L;) {
      int f = label(G.alpha[cyc[i]]);
      int m = 0;
      while (true) {
        if (label(G.alpha[cyc[i]]) != f)
          throw std::logic_error("boundary segment changes face");
        ++done;
        bool sp = splits(i);
        i = (i + 1) % L;
        if (sp)
          break;
        ++m;
      }
      out.push_back(EdgeFactor::pure_power(f, -2 * m - 1, Rational(catalan(m))));
    }
  }
  return out;
}

inline Contribution contribution(const NodalGraph &ng, const SmoothingProfile &prof)
{
  Contribution c;
  auto tr = trace_all(ng);
  auto roles = endpoint_roles(ng, tr);
  for (std::size_t i = 0; i < ng.components.size(); ++i) {
    c.scalar *= component_constant(ng.components[i], tr[i]);
    for (auto &f : edge_factors(ng.components[i], tr[i], roles[i]))
      c.factors.push_back(std::move(f));
  }
  c.scalar /= nodal_aut_order(ng);
  c.n_power = prof.b;
  c.s_monomial = prof.exc.empty() ? prof.kbar : prof.exc;
  return c;
}

inline Contribution contribution(const NodalGraph &ng) { return contribution(ng, smooth(ng)); }

// Kontsevich-Penner weight 2^{e_I - v_I} N^b / |Aut|.
inline Contribution kp_contribution(const RibbonGraph &G)
{
  Contribution c;
  auto t = trace(G);
  std::vector<EndRole> roles(t.v, EndRole::None);
  c.factors = edge_factors(G, t, roles);
  c.scalar = pow2(t.e_internal - t.v_interior) / automorphism_order(G);
  c.n_power = t.b;
  return c;
}

namespace detail {

// Sum of contributions, expanded on every monomial of total degree -deg with
// l negative exponents. Keys are the positive exponents.
inline std::map<std::vector<int>, NPoly> expand_sector(const std::vector<Contribution> &cs, int l, int deg)
{
  std::map<std::vector<int>, NPoly> out;
  if (l == 0) {
    NPoly s;
    for (auto &c : cs) {
      if (!c.factors.empty())
        throw std::logic_error("faceless graph with edge weights");
      s += NPoly::monomial(c.scalar, c.n_power);
    }
    out[{}] = s;
    return out;
  }
  auto comps = compositions(deg, l);
  for (auto &e : comps)
    out[e] = NPoly();
  for (auto &c : cs) {
    if (total_degree(c.factors) != -deg)
      throw std::logic_error("degree identity violated by a graph weight");
    for (auto &e : comps) {
      std::vector<int> target(e.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        target[i] = -e[i];
      NPoly v = coefficient_of(c.factors, target);
      if (v.is_zero())
        continue;
      out[e] += (v * c.scalar).shifted(c.n_power);
    }
  }
  for (auto &kv : out) {
    auto s = kv.first;
    std::sort(s.begin(), s.end());
    if (out.at(s) != kv.second)
      throw std::logic_error("sector expansion is not symmetric in the face variables");
  }
  return out;
}

inline bool all_odd(const std::vector<int> &e)
{
  for (int x : e)
    if (x % 2 == 0)
      return false;
  return true;
}

// Coefficients on odd exponents as tau multisets; anything else must vanish.
inline std::map<std::vector<int>, NPoly> tau_coefficients(const std::map<std::vector<int>, NPoly> &exp,
                                                          const std::string &where)
{
  std::map<std::vector<int>, NPoly> out;
  for (auto &kv : exp) {
    if (!std::is_sorted(kv.first.begin(), kv.first.end()))
      continue;
    if (!all_odd(kv.first)) {
      if (!kv.second.is_zero())
        throw SpuriousMonomial("nonzero coefficient off the odd window in " + where);
      continue;
    }
    std::vector<int> taus;
    Rational df = 1;
    for (int x : kv.first) {
      taus.push_back((x - 1) / 2);
      df *= Rational(double_factorial(x - 2));
    }
    out[taus] = kv.second * (Rational(1) / df);
  }
  return out;
}

inline Rational multiplicity_factorials(const std::vector<int> &v)
{
  std::map<int, int> m;
  for (int x : v)
    ++m[x];
  Rational r = 1;
  for (auto &kv : m)
    r *= Rational(factorial(kv.second));
  return r;
}

} // namespace detail

class Amplitude
{
public:
  explicit Amplitude(Enumerator &en) : en_(en) {}

  Enumerator &enumerator() { return en_; }

  // ⟨tau_a sigma_E⟩_g for one (g, l, E).
  CorrelatorTable extended_sector(int g, int l, std::vector<int> exc)
  {
    std::sort(exc.begin(), exc.end());
    CorrelatorTable T;
    auto cat = en_.gen_extended(g, l, exc);
    T.dart_bound = cat.dart_bound;
    T.graphs = static_cast<long long>(cat.items.size());
    const int X = static_cast<int>(exc.size());
    int deg = 3 * (g - 1 + l + X);
    for (int c : exc)
      deg -= 2 * c + 2;
    T.degree_cap = 3 * (g - 1 + l + X);
    if (deg < l || (deg - l) % 2 || (l == 0 && deg != 0))
      return T;
    std::vector<Contribution> cs;
    for (auto &e : cat.items)
      cs.push_back(contribution(e.graph, e.profile));
    auto exp = detail::expand_sector(cs, l, deg);
    std::ostringstream where;
    where << "extended g=" << g << " l=" << l;
    Rational book = detail::multiplicity_factorials(exc);
    for (auto &kv : detail::tau_coefficients(exp, where.str())) {
      CorrelatorKey k{Family::Extended, g, kv.first, exc, {}, 0, X};
      T.entries[k] = kv.second * book;
    }
    return T;
  }

  // All extended sectors of total degree <= D.
  CorrelatorTable extended_table(int D)
  {
    CorrelatorTable T;
    T.degree_cap = D;
    for (int s = 1; 3 * s <= D; ++s)
      for (int X = 0; X <= s + 1; ++X)
        for (int l = 0; l + X <= s + 1; ++l) {
          int g = s + 1 - l - X;
          for (auto &E : bounded_multisets(X, 3 * s - l, [](int c) { return 2 * c + 2; })) {
            int rest = 3 * s;
            for (int c : E)
              rest -= 2 * c + 2;
            if (rest < l || (rest - l) % 2 || (l == 0 && rest != 0))
              continue;
            T.merge(extended_sector(g, l, E));
          }
        }
    T.degree_cap = D;
    return T;
  }

  // Refined values grouped by b, and very refined values by kbar, for one (g,k,l).
  std::pair<CorrelatorTable, CorrelatorTable> refined_sector(int g, int k, int l)
  {
    CorrelatorTable R, V;
    const int deg = 3 * g - 3 + k + 3 * l;
    R.degree_cap = V.degree_cap = 3 * (g - 1 + l + k);
    if (deg < l || (deg - l) % 2 || (l == 0 && deg != 0))
      return {R, V};
    const auto &U = en_.refined_unlabeled(g, k, l);
    R.dart_bound = V.dart_bound = U.dart_bound;
    std::set<std::vector<int>> kbars;
    for (int b = 1; b <= g + 1; ++b)
      for (auto &kb : padded_partitions(k, b))
        kbars.insert(kb);
    Rational book = Rational(factorial(k));
    std::map<CorrelatorKey, NPoly> refined;
    for (auto &kb : kbars) {
      auto cat = en_.gen_nodal_kbar(g, kb, l);
      V.graphs += static_cast<long long>(cat.items.size());
      std::vector<Contribution> cs;
      for (auto &e : cat.items)
        cs.push_back(contribution(e.graph, e.profile));
      std::ostringstream where;
      where << "very refined g=" << g << " l=" << l;
      auto exp = detail::expand_sector(cs, l, deg);
      for (auto &kv : detail::tau_coefficients(exp, where.str())) {
        CorrelatorKey key{Family::VeryRefined, g, kv.first, {}, kb, static_cast<int>(kb.size()), k};
        V.entries[key] = kv.second * book;
      }
    }
    for (int b = 1; b <= g + 1; ++b) {
      auto cat = en_.gen_nodal_b(g, k, b, l);
      R.graphs += static_cast<long long>(cat.items.size());
      std::vector<Contribution> cs;
      for (auto &e : cat.items)
        cs.push_back(contribution(e.graph, e.profile));
      std::ostringstream where;
      where << "refined g=" << g << " l=" << l;
      auto exp = detail::expand_sector(cs, l, deg);
      for (auto &kv : detail::tau_coefficients(exp, where.str())) {
        CorrelatorKey key{Family::Refined, g, kv.first, {}, {}, b, k};
        R.entries[key] = kv.second * book;
      }
    }
    return {R, V};
  }

  CorrelatorTable very_refined_sector(int g, std::vector<int> kbar, int l)
  {
    std::sort(kbar.rbegin(), kbar.rend());
    int k = 0;
    for (int x : kbar)
      k += x;
    CorrelatorTable V;
    const int deg = 3 * g - 3 + k + 3 * l;
    V.degree_cap = 3 * (g - 1 + l + k);
    if (deg < l || (deg - l) % 2 || (l == 0 && deg != 0))
      return V;
    auto cat = en_.gen_nodal_kbar(g, kbar, l);
    V.dart_bound = cat.dart_bound;
    V.graphs = static_cast<long long>(cat.items.size());
    std::vector<Contribution> cs;
    for (auto &e : cat.items)
      cs.push_back(contribution(e.graph, e.profile));
    auto exp = detail::expand_sector(cs, l, deg);
    for (auto &kv : detail::tau_coefficients(exp, "very refined"))
      V.entries[{Family::VeryRefined, g, kv.first, {}, kbar, static_cast<int>(kbar.size()), k}] =
          kv.second * Rational(factorial(k));
    return V;
  }

  // Refined and very refined tables over all sectors of degree <= D.
  std::pair<CorrelatorTable, CorrelatorTable> refined_tables(int D)
  {
    CorrelatorTable R, V;
    for (int s = 1; 3 * s <= D; ++s)
      for (int k = 0; k <= s + 1; ++k)
        for (int l = 0; l + k <= s + 1; ++l) {
          int g = s + 1 - l - k;
          auto rv = refined_sector(g, k, l);
          R.merge(rv.first);
          V.merge(rv.second);
        }
    R.degree_cap = V.degree_cap = D;
    return {R, V};
  }

  CorrelatorTable kp_sector(int g, int n)
  {
    CorrelatorTable T;
    const int deg = 3 * (g - 1 + n);
    T.degree_cap = deg;
    if (n < 1 || deg < n)
      return T;
    auto cat = en_.gen_components(g, 0, n);
    T.dart_bound = cat.dart_bound;
    T.graphs = static_cast<long long>(cat.items.size());
    std::vector<Contribution> cs;
    for (auto &G : cat.items)
      cs.push_back(kp_contribution(G));
    for (auto &kv : detail::expand_sector(cs, n, deg)) {
      if (!std::is_sorted(kv.first.begin(), kv.first.end()))
        continue;
      Rational prod = 1;
      for (int a : kv.first)
        prod *= a;
      T.entries[{Family::KP, g, kv.first, {}, {}, 0, 0}] = kv.second * prod;
    }
    return T;
  }

  CorrelatorTable kp_table(int D, int n_max = 0)
  {
    CorrelatorTable T;
    for (int s = 1; 3 * s <= D; ++s)
      for (int n = 1; n <= s + 1; ++n) {
        if (n_max > 0 && n > n_max)
          continue;
        T.merge(kp_sector(s + 1 - n, n));
      }
    T.degree_cap = D;
    return T;
  }

private:
  Enumerator &en_;
};

// ---------------------------------------------------------------------------
// Identity suite

struct VerifyFailure
{
  std::string key;
  std::string lhs, rhs;
};

struct VerifyReport
{
  std::string identity;
  long long checked = 0;
  std::vector<VerifyFailure> failures;
  std::vector<VerifyFailure> informational; // g >= 2 conjecture comparisons
  bool passed() const { return failures.empty(); }
};

namespace detail {

inline void check(VerifyReport &r, const std::string &key, const NPoly &lhs, const NPoly &rhs, bool hard = true)
{
  ++r.checked;
  if (hard) {
    if (lhs != rhs)
      r.failures.push_back({key, lhs.render(), rhs.render()});
  } else {
    r.informational.push_back({key + (lhs == rhs ? " [equal]" : " [differs]"), lhs.render(), rhs.render()});
  }
}

inline CorrelatorKey without(const CorrelatorKey &k, std::size_t tau_pos)
{
  CorrelatorKey x = k;
  x.taus.erase(x.taus.begin() + static_cast<long>(tau_pos));
  return x;
}

inline void normalize(CorrelatorKey &k)
{
  std::sort(k.taus.begin(), k.taus.end());
  std::sort(k.sigmas.begin(), k.sigmas.end());
  k.k = static_cast<int>(k.sigmas.size());
}

} // namespace detail

inline VerifyReport verify_string(const CorrelatorTable &ext)
{
  VerifyReport r{"string", 0, {}, {}};
  for (auto &kv : ext.entries) {
    const auto &K = kv.first;
    auto it = std::find(K.taus.begin(), K.taus.end(), 0);
    if (it == K.taus.end())
      continue;
    auto X = detail::without(K, static_cast<std::size_t>(it - K.taus.begin()));
    NPoly rhs;
    for (std::size_t i = 0; i < X.taus.size(); ++i)
      if (X.taus[i] >= 1) {
        auto Y = X;
        Y.taus[i] -= 1;
        detail::normalize(Y);
        rhs += ext.get(Y);
      }
    for (std::size_t j = 0; j < X.sigmas.size(); ++j)
      if (X.sigmas[j] >= 1) {
        auto Y = X;
        Y.sigmas[j] -= 1;
        detail::normalize(Y);
        rhs += ext.get(Y);
      }
    if (X.taus.empty() && X.sigmas == std::vector<int>{0})
      rhs += NPoly::monomial(1, 1);
    detail::check(r, K.render(), kv.second, rhs);
  }
  return r;
}

inline VerifyReport verify_dilaton(const CorrelatorTable &ext)
{
  VerifyReport r{"dilaton", 0, {}, {}};
  for (auto &kv : ext.entries) {
    const auto &K = kv.first;
    auto it = std::find(K.taus.begin(), K.taus.end(), 1);
    if (it == K.taus.end())
      continue;
    auto X = detail::without(K, static_cast<std::size_t>(it - K.taus.begin()));
    int mult = X.genus - 1 + static_cast<int>(X.taus.size()) + static_cast<int>(X.sigmas.size());
    NPoly rhs = ext.get(X) * Rational(mult);
    if (X.taus.empty() && X.sigmas.empty())
      rhs += NPoly::monomial(Rational(1, 2), 2);
    detail::check(r, K.render(), kv.second, rhs);
  }
  return r;
}

inline VerifyReport verify_parity(const std::vector<const CorrelatorTable *> &tables)
{
  VerifyReport r{"parity", 0, {}, {}};
  for (auto *t : tables)
    for (auto &kv : t->entries) {
      ++r.checked;
      if (!parity_law_holds(kv.second, kv.first.genus))
        r.failures.push_back({kv.first.render(), kv.second.render(),
                              "degree <= " + std::to_string(kv.first.genus + 1) + ", parity opposite to genus"});
    }
  return r;
}

inline VerifyReport verify_collapse(const CorrelatorTable &ext, const CorrelatorTable &refined)
{
  VerifyReport r{"collapse", 0, {}, {}};
  std::map<std::tuple<int, std::vector<int>, int>, NPoly> sums;
  for (auto &kv : refined.entries)
    sums[{kv.first.genus, kv.first.taus, kv.first.k}] += kv.second;
  for (auto &kv : ext.entries) {
    const auto &K = kv.first;
    if (std::any_of(K.sigmas.begin(), K.sigmas.end(), [](int c) { return c != 0; }))
      continue;
    auto it = sums.find({K.genus, K.taus, K.k});
    detail::check(r, K.render(), kv.second, it == sums.end() ? NPoly() : it->second);
  }
  return r;
}

inline VerifyReport verify_partition_sum(const CorrelatorTable &refined, const CorrelatorTable &very)
{
  VerifyReport r{"partition_sum", 0, {}, {}};
  std::map<std::tuple<int, std::vector<int>, int, int>, NPoly> sums;
  for (auto &kv : very.entries)
    sums[{kv.first.genus, kv.first.taus, kv.first.k, static_cast<int>(kv.first.kbar.size())}] += kv.second;
  for (auto &kv : refined.entries) {
    const auto &K = kv.first;
    auto it = sums.find({K.genus, K.taus, K.k, K.b});
    detail::check(r, K.render(), kv.second, it == sums.end() ? NPoly() : it->second);
  }
  return r;
}

// ⟨tau_a sigma_c⟩_g against ⟨theta_{2a+1} theta_{2c+2}⟩ / (prod (2a+1)!! prod 2^{c+1}(c+1)!).
inline VerifyReport verify_conjecture(const CorrelatorTable &ext, const CorrelatorTable &kp, int hard_genus_max = 1)
{
  VerifyReport r{"conjecture", 0, {}, {}};
  for (auto &kv : ext.entries) {
    const auto &K = kv.first;
    CorrelatorKey Q{Family::KP, K.genus, {}, {}, {}, 0, 0};
    Rational div = 1;
    for (int a : K.taus) {
      Q.taus.push_back(2 * a + 1);
      div *= Rational(double_factorial(2 * a + 1));
    }
    for (int c : K.sigmas) {
      Q.taus.push_back(2 * c + 2);
      div *= pow2(c + 1) * Rational(factorial(c + 1));
    }
    std::sort(Q.taus.begin(), Q.taus.end());
    if (!kp.entries.count(Q))
      continue;
    NPoly rhs = kp.get(Q) * (Rational(1) / div);
    detail::check(r, K.render(), kv.second, rhs, K.genus <= hard_genus_max);
  }
  return r;
}

} // namespace rgi
