#pragma once

// Wick expansion of the Kontsevich-Penner integral on labeled pairings.
// Nothing here touches maps, canonical forms or automorphism groups.

#include "combinat.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "table.hpp"

#include <atomic>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rgi::oracle {

struct ResourceCap : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct VertexSpec
{
  int cubic = 0;
  std::vector<int> det; // degrees of N tr((Lambda^{-1} H)^k)/k vertices

  int half_edges() const { return 3 * cubic + std::accumulate(det.begin(), det.end(), 0); }
  int lambda_degree() const
  {
    int K = std::accumulate(det.begin(), det.end(), 0);
    return K + half_edges() / 2;
  }
};

// (1/p!) (1/6)^p prod(1/k_i) / prod(multiplicity!), without the N^r.
inline Rational symmetry_prefactor(const VertexSpec &s)
{
  Rational r = Rational(1) / Rational(factorial(s.cubic));
  for (int i = 0; i < s.cubic; ++i)
    r /= 6;
  std::map<int, int> mult;
  for (int k : s.det) {
    r /= k;
    ++mult[k];
  }
  for (auto &kv : mult)
    r /= Rational(factorial(kv.second));
  return r;
}

// Loop structure of one connected pairing, loops numbered by first use.
struct Diagram
{
  int loops = 0;
  std::vector<std::pair<int, int>> edges; // loops on both sides
  std::vector<int> corners;               // Lambda^{-1} count per loop
  friend bool operator<(const Diagram &a, const Diagram &b)
  {
    return std::tie(a.loops, a.edges, a.corners) < std::tie(b.loops, b.edges, b.corners);
  }
};

struct PairingStats
{
  long long matchings = 0; // connected and disconnected
  long long connected = 0;
};

// Connected pairings of a spec, grouped by loop structure with multiplicities.
inline std::map<Diagram, long long> connected_diagrams(const VertexSpec &spec, PairingStats &stats,
                                                       long long cap = 0, int threads = 1)
{
  std::vector<int> vertex_of, next, prev;
  std::vector<char> det_slot;
  auto add_vertex = [&](int deg, bool det) {
    int v = vertex_of.empty() ? 0 : vertex_of.back() + 1;
    int base = static_cast<int>(vertex_of.size());
    for (int i = 0; i < deg; ++i) {
      vertex_of.push_back(v);
      next.push_back(base + (i + 1) % deg);
      prev.push_back(base + (i + deg - 1) % deg);
      det_slot.push_back(det);
    }
  };
  for (int i = 0; i < spec.cubic; ++i)
    add_vertex(3, false);
  for (int k : spec.det)
    add_vertex(k, true);
  const int n = static_cast<int>(vertex_of.size());
  std::map<Diagram, long long> out;
  if (n == 0 || n % 2)
    return out;
  const int V = vertex_of.back() + 1;

  std::vector<std::map<Diagram, long long>> local(std::max(1, threads));
  std::vector<PairingStats> local_stats(local.size());
  std::atomic<long long> leaves{0};

  auto evaluate = [&](const std::vector<int> &partner, std::map<Diagram, long long> &acc, PairingStats &st) {
    ++st.matchings;
    if (cap > 0 && ++leaves > cap)
      throw ResourceCap("oracle resource cap exceeded");
    std::vector<int> up(V);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](std::vector<int> &p, int x) {
      while (p[x] != x)
        x = p[x] = p[p[x]];
      return x;
    };
    for (int a = 0; a < n; ++a)
      up[find(up, vertex_of[a])] = find(up, vertex_of[partner[a]]);
    for (int v = 1; v < V; ++v)
      if (find(up, v) != find(up, 0))
        return;
    ++st.connected;
    // corner after slot s; pairing a-b joins corner(prev a) with corner(b)
    std::vector<int> cp(n);
    std::iota(cp.begin(), cp.end(), 0);
    for (int a = 0; a < n; ++a)
      cp[find(cp, prev[a])] = find(cp, partner[a]);
    std::vector<int> id(n, -1);
    Diagram D;
    auto loop = [&](int corner) {
      int r = find(cp, corner);
      if (id[r] < 0) {
        id[r] = D.loops++;
        D.corners.push_back(0);
      }
      return id[r];
    };
    for (int a = 0; a < n; ++a) {
      int b = partner[a];
      if (a < b) {
        int x = loop(prev[a]), y = loop(a);
        D.edges.emplace_back(std::min(x, y), std::max(x, y));
      }
    }
    for (int s = 0; s < n; ++s)
      if (det_slot[s])
        D.corners[loop(s)] += 1;
    std::sort(D.edges.begin(), D.edges.end());
    acc[D] += 1;
  };

  // split over the partner of slot 0
  run_tasks(n - 1, static_cast<int>(local.size()), [&](int t, int w) {
    std::vector<int> partner(n, -1);
    partner[0] = t + 1;
    partner[t + 1] = 0;
    std::function<void()> rec = [&]() {
      int i = 0;
      while (i < n && partner[i] >= 0)
        ++i;
      if (i == n) {
        evaluate(partner, local[w], local_stats[w]);
        return;
      }
      for (int j = i + 1; j < n; ++j) {
        if (partner[j] >= 0)
          continue;
        partner[i] = j;
        partner[j] = i;
        rec();
        partner[i] = partner[j] = -1;
      }
    };
    rec();
  });
  for (std::size_t w = 0; w < local.size(); ++w) {
    for (auto &kv : local[w])
      out[kv.first] += kv.second;
    stats.matchings += local_stats[w].matchings;
    stats.connected += local_stats[w].connected;
  }
  return out;
}

// Coefficient of prod lambda_i^{-mu_i} (i = 1..len(mu)) in the diagram sum.
inline Rational diagram_coefficient(const Diagram &D, const std::vector<int> &mu)
{
  const int L = D.loops;
  const int ell = static_cast<int>(mu.size());
  if (ell > L)
    return 0;
  std::vector<int> target(ell);
  for (int i = 0; i < ell; ++i)
    target[i] = -mu[i];
  Rational total = 0;
  std::vector<int> f(L, 1);
  while (true) {
    std::vector<char> hit(ell + 1, 0);
    int used = 0;
    for (int x : f)
      if (!hit[x]++)
        ++used;
    if (used == ell) {
      std::vector<EdgeFactor> prod;
      for (auto &e : D.edges)
        prod.push_back(EdgeFactor::inverse_sum(f[e.first], f[e.second], 2));
      for (int i = 0; i < L; ++i)
        for (int c = 0; c < D.corners[i]; ++c)
          prod.push_back(EdgeFactor::pure_power(f[i], -1));
      total += coefficient_of(prod, target).coeff(0);
    }
    int i = 0;
    while (i < L && f[i] == ell)
      f[i++] = 1;
    if (i == L)
      break;
    ++f[i];
  }
  return total;
}

inline std::vector<VertexSpec> specs_of_degree(int d)
{
  std::vector<VertexSpec> out;
  if (d % 3)
    return out;
  const int total = 2 * d / 3; // p + K
  for (int p = 0; p < total; ++p) {
    int K = total - p;
    for (auto &det : partitions(K, K)) {
      VertexSpec s{p, det};
      if (s.half_edges() % 2 == 0)
        out.push_back(s);
    }
  }
  return out;
}

struct FreeEnergy
{
  int M = 0;
  int max_degree = 0;
  // degree -> partition (descending) -> coefficient of lambda^{-mu}
  std::map<int, std::map<std::vector<int>, NPoly>> coeffs;
  PairingStats stats;
};

inline FreeEnergy kp_free_energy(int M, int D, long long cap = 0, int threads = 1)
{
  if (M < D)
    throw std::invalid_argument("oracle: need M >= D symbolic variables");
  FreeEnergy F;
  F.M = M;
  F.max_degree = D;
  for (int d = 3; d <= D; d += 3) {
    auto &slot = F.coeffs[d];
    auto parts = partitions(d, M);
    for (auto &mu : parts)
      slot[mu] = NPoly();
    for (auto &spec : specs_of_degree(d)) {
      PairingStats st;
      auto diagrams = connected_diagrams(spec, st, cap, threads);
      if (st.matchings != static_cast<long long>(double_factorial(spec.half_edges() - 1)))
        throw std::logic_error("oracle: matching count differs from (h-1)!!");
      F.stats.matchings += st.matchings;
      F.stats.connected += st.connected;
      Rational pre = symmetry_prefactor(spec);
      const int r = static_cast<int>(spec.det.size());
      for (auto &mu : parts) {
        Rational c = 0;
        for (auto &kv : diagrams)
          c += diagram_coefficient(kv.first, mu) * Rational(kv.second);
        slot[mu] += NPoly::monomial(c * pre, r);
      }
    }
  }
  return F;
}

// Number of maps from the parts of nu to [len mu] with fibre sums mu.
inline long long miwa_multiplicity(const std::vector<int> &nu, const std::vector<int> &mu)
{
  std::vector<int> left = mu;
  std::function<long long(std::size_t)> rec = [&](std::size_t i) -> long long {
    if (i == nu.size()) {
      for (int x : left)
        if (x)
          return 0;
      return 1;
    }
    long long s = 0;
    for (auto &x : left)
      if (x >= nu[i]) {
        x -= nu[i];
        s += rec(i + 1);
        x += nu[i];
      }
    return s;
  };
  return rec(0);
}

// Solve c_mu = sum_nu L(nu,mu) <theta_nu>/(prod mult! prod nu_i) degree by degree.
inline CorrelatorTable miwa_extract(const FreeEnergy &F)
{
  CorrelatorTable T;
  T.degree_cap = F.max_degree;
  for (auto &[d, cmap] : F.coeffs) {
    std::vector<std::vector<int>> parts;
    std::vector<NPoly> rhs;
    for (auto &kv : cmap) {
      parts.push_back(kv.first);
      rhs.push_back(kv.second);
    }
    const int P = static_cast<int>(parts.size());
    RationalMatrix A(P, std::vector<Rational>(P));
    for (int row = 0; row < P; ++row)
      for (int col = 0; col < P; ++col)
        A[row][col] = miwa_multiplicity(parts[col], parts[row]);
    auto w = solve_linear(A, rhs);
    for (int col = 0; col < P; ++col) {
      if (w[col].is_zero())
        continue;
      const auto &nu = parts[col];
      Rational scale = 1;
      std::map<int, int> mult;
      for (int x : nu) {
        scale *= x;
        ++mult[x];
      }
      for (auto &kv : mult)
        scale *= Rational(factorial(kv.second));
      const int n = static_cast<int>(nu.size());
      const int g = d / 3 + 1 - n;
      std::vector<int> key(nu.rbegin(), nu.rend());
      T.entries[{Family::KP, g, key, {}, {}, 0, 0}] = w[col] * scale;
    }
  }
  return T;
}

} // namespace rgi::oracle
