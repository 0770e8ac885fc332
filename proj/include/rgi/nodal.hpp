#pragma once

#include "ribbon.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rgi {

struct Endpoint
{
  int comp = 0;
  int vertex = 0;

  friend bool operator==(const Endpoint &a, const Endpoint &b)
  {
    return a.comp == b.comp && a.vertex == b.vertex;
  }
  friend bool operator<(const Endpoint &a, const Endpoint &b)
  {
    return a.comp != b.comp ? a.comp < b.comp : a.vertex < b.vertex;
  }
};

struct Node
{
  Endpoint legal;
  Endpoint illegal;
};

struct NodalGraph
{
  std::vector<RibbonGraph> components;
  std::vector<Node> nodes;
};

struct AssembleError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// The dart at vertex v that carries its boundary corner.
inline int boundary_dart(const RibbonGraph &G, const TraceResult &t, int v)
{
  for (int d = 0; d < G.dart_count(); ++d)
    if (t.vertex_of[d] == v && G.tag[d].kind == FaceKind::Boundary)
      return d;
  return -1;
}

inline NodalGraph assemble(std::vector<RibbonGraph> components, std::vector<Node> nodes)
{
  std::vector<TraceResult> tr;
  for (auto &c : components)
    tr.push_back(trace(c));
  std::vector<Endpoint> used;
  auto check = [&](const Endpoint &p) {
    if (p.comp < 0 || p.comp >= static_cast<int>(components.size()))
      throw AssembleError("endpoint component out of range");
    auto &t = tr[p.comp];
    if (p.vertex < 0 || p.vertex >= t.v || !t.vertex_marked[p.vertex])
      throw AssembleError("endpoint is not a marked vertex");
    for (auto &u : used)
      if (u == p)
        throw AssembleError("duplicate endpoint");
    used.push_back(p);
  };
  for (auto &nd : nodes) {
    check(nd.legal);
    check(nd.illegal);
    if (components[nd.illegal.comp].kind == GraphKind::Ghost)
      throw AssembleError("ghost-with-illegal");
    if (components[nd.legal.comp].kind == GraphKind::Exceptional)
      throw AssembleError("exceptional-with-legal");
  }
  std::vector<int> parent(components.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto &nd : nodes)
    parent[find(nd.legal.comp)] = find(nd.illegal.comp);
  for (std::size_t i = 0; i < components.size(); ++i)
    if (find(static_cast<int>(i)) != find(0))
      throw AssembleError("disconnected");
  return NodalGraph{std::move(components), std::move(nodes)};
}

enum class OddMode { Critical, Extended };

enum class EndRole : char { None = 0, Legal = 1, Illegal = 2 };

// role of every (component, vertex)
inline std::vector<std::vector<EndRole>> endpoint_roles(const NodalGraph &ng,
                                                       const std::vector<TraceResult> &tr)
{
  std::vector<std::vector<EndRole>> roles;
  for (auto &t : tr)
    roles.emplace_back(t.v, EndRole::None);
  for (auto &nd : ng.nodes) {
    roles[nd.legal.comp][nd.legal.vertex] = EndRole::Legal;
    roles[nd.illegal.comp][nd.illegal.vertex] = EndRole::Illegal;
  }
  return roles;
}

inline std::vector<TraceResult> trace_all(const NodalGraph &ng)
{
  std::vector<TraceResult> tr;
  for (auto &c : ng.components)
    tr.push_back(trace(c));
  return tr;
}

inline bool is_odd(const NodalGraph &ng, OddMode mode)
{
  auto tr = trace_all(ng);
  auto roles = endpoint_roles(ng, tr);
  for (std::size_t c = 0; c < ng.components.size(); ++c) {
    const auto &G = ng.components[c];
    if (mode == OddMode::Extended && G.kind == GraphKind::Exceptional)
      continue;
    const auto &t = tr[c];
    std::vector<int> count(t.b, 0);
    for (int v = 0; v < t.v; ++v) {
      if (!t.vertex_marked[v])
        continue;
      bool counts = roles[c][v] == EndRole::Legal ||
                    (mode == OddMode::Critical && roles[c][v] == EndRole::None);
      if (counts)
        count[t.cycle_of[boundary_dart(G, t, v)]] += 1;
    }
    for (int x : count)
      if (x % 2 == 0)
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Smoothing: every node becomes an external edge inserted at the boundary
// corners of its two endpoints. Face cycles are untouched; boundary cycles
// are cross-joined.

struct AugmentedMap
{
  ColoredMap map;
  std::vector<int> offset;                 // first dart of each component
  std::vector<std::pair<int, int>> node_darts; // (legal side dart, illegal side dart)
  std::vector<TraceResult> traces;
};

inline std::uint32_t node_color(EndRole r) { return (1u << 20) + static_cast<std::uint32_t>(r); }

inline AugmentedMap augment(const NodalGraph &ng)
{
  AugmentedMap A;
  A.traces = trace_all(ng);
  int total = 0;
  for (auto &c : ng.components) {
    A.offset.push_back(total);
    total += c.dart_count();
  }
  auto &m = A.map;
  for (std::size_t c = 0; c < ng.components.size(); ++c) {
    const auto &G = ng.components[c];
    int off = A.offset[c];
    for (int d = 0; d < G.dart_count(); ++d) {
      m.sigma.push_back(G.sigma[d] + off);
      m.alpha.push_back(G.alpha[d] + off);
      m.color.push_back(dart_color(G, d));
    }
  }
  auto sigma_inv = inverse_permutation(m.sigma);
  auto insert = [&](const Endpoint &p, EndRole role) {
    const auto &G = ng.components[p.comp];
    int d = boundary_dart(G, A.traces[p.comp], p.vertex) + A.offset[p.comp];
    int z = static_cast<int>(m.sigma.size());
    int prev = sigma_inv[d];
    m.sigma.push_back(d);
    m.sigma[prev] = z;
    sigma_inv.push_back(prev);
    sigma_inv[d] = z;
    m.alpha.push_back(-1);
    m.color.push_back(node_color(role));
    return z;
  };
  for (auto &nd : ng.nodes) {
    int zl = insert(nd.legal, EndRole::Legal);
    int zi = insert(nd.illegal, EndRole::Illegal);
    m.alpha[zl] = zi;
    m.alpha[zi] = zl;
    A.node_darts.emplace_back(zl, zi);
  }
  return A;
}

struct SmoothingProfile
{
  int b = 0;
  std::vector<int> kbar; // sorted descending
  int genus = 0;
  std::vector<int> exc;  // m for each exceptional component with m+1 vertices, ascending
};

inline SmoothingProfile smooth(const NodalGraph &ng)
{
  auto A = augment(ng);
  const auto &m = A.map;
  const int n = static_cast<int>(m.sigma.size());
  std::vector<int> phi(n);
  for (int d = 0; d < n; ++d)
    phi[d] = m.sigma[m.alpha[d]];

  // which darts belong to the boundary/node family
  std::vector<char> bnd(n, 0);
  for (std::size_t c = 0; c < ng.components.size(); ++c) {
    const auto &G = ng.components[c];
    for (int d = 0; d < G.dart_count(); ++d)
      bnd[d + A.offset[c]] = G.tag[d].kind == FaceKind::Boundary;
  }
  for (auto &pr : A.node_darts)
    bnd[pr.first] = bnd[pr.second] = 1;

  auto cycles = permutation_cycles(phi);
  std::vector<int> cycle_of(n, -1);
  std::vector<int> smoothed;
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    char kind = bnd[cycles[i][0]];
    for (int d : cycles[i]) {
      if (bnd[d] != kind)
        throw std::logic_error("smoothing mixes boundary and face darts");
      cycle_of[d] = i;
    }
    if (kind)
      smoothed.push_back(i);
  }

  SmoothingProfile p;
  p.b = static_cast<int>(smoothed.size());
  auto roles = endpoint_roles(ng, A.traces);
  std::map<int, int> per_cycle;
  for (int i : smoothed)
    per_cycle[i] = 0;
  int V = 0, E = 0, sum_g = 0;
  for (std::size_t c = 0; c < ng.components.size(); ++c) {
    const auto &G = ng.components[c];
    const auto &t = A.traces[c];
    V += t.v;
    E += t.e;
    sum_g += t.genus;
    for (int v = 0; v < t.v; ++v)
      if (t.vertex_marked[v] && roles[c][v] == EndRole::None)
        per_cycle[cycle_of[boundary_dart(G, t, v) + A.offset[c]]] += 1;
    if (G.kind == GraphKind::Exceptional)
      p.exc.push_back(t.v - 1);
  }
  for (auto &kv : per_cycle)
    p.kbar.push_back(kv.second);
  std::sort(p.kbar.rbegin(), p.kbar.rend());
  std::sort(p.exc.begin(), p.exc.end());

  const int nodes = static_cast<int>(ng.nodes.size());
  const int C = static_cast<int>(ng.components.size());
  p.genus = sum_g + nodes - C + 1;

  // independent recomputation from the closed surface of the augmented map
  int chi_closed = V - (E + nodes) + static_cast<int>(cycles.size());
  if ((2 - chi_closed) % 2 != 0)
    throw std::logic_error("smoothing: odd Euler characteristic defect");
  int h = (2 - chi_closed) / 2;
  if (2 * h + p.b - 1 != p.genus)
    throw std::logic_error("smoothing: genus cross-check failed");
  return p;
}

// ---------------------------------------------------------------------------
// Automorphisms of a nodal graph by explicit search over component
// isomorphisms and permutations of like components.

inline int nodal_aut_order(const NodalGraph &ng)
{
  const int C = static_cast<int>(ng.components.size());
  std::vector<ColoredMap> maps;
  std::vector<CanonicalForm> forms;
  std::vector<std::vector<int>> canon_order;
  std::vector<TraceResult> tr;
  for (auto &G : ng.components) {
    maps.push_back(colored(G));
    forms.push_back(canonical_form(maps.back()));
    canon_order.push_back(bfs_order(maps.back(), forms.back().root));
    tr.push_back(trace(G));
  }

  // vertex maps for every isomorphism i -> j
  std::vector<std::vector<std::vector<std::vector<int>>>> iso(C, std::vector<std::vector<std::vector<int>>>(C));
  for (int i = 0; i < C; ++i)
    for (int j = 0; j < C; ++j) {
      if (forms[i].code != forms[j].code)
        continue;
      for (int r : matching_roots(maps[j], forms[i].code)) {
        auto oj = bfs_order(maps[j], r);
        std::vector<int> vmap(tr[i].v, -1);
        for (std::size_t t = 0; t < oj.size(); ++t)
          vmap[tr[i].vertex_of[canon_order[i][t]]] = tr[j].vertex_of[oj[t]];
        iso[i][j].push_back(std::move(vmap));
      }
    }

  std::map<std::pair<Endpoint, Endpoint>, int> node_set;
  for (auto &nd : ng.nodes)
    node_set[{nd.legal, nd.illegal}] = 1;

  std::vector<int> target(C, -1);
  std::vector<const std::vector<int> *> chosen(C, nullptr);
  std::vector<char> used(C, 0);
  int count = 0;

  auto image = [&](const Endpoint &p) { return Endpoint{target[p.comp], (*chosen[p.comp])[p.vertex]}; };
  auto consistent = [&]() {
    for (auto &nd : ng.nodes) {
      if (target[nd.legal.comp] < 0 || target[nd.illegal.comp] < 0)
        continue;
      if (!node_set.count({image(nd.legal), image(nd.illegal)}))
        return false;
    }
    return true;
  };
  std::function<void(int)> search = [&](int i) {
    if (i == C) {
      ++count;
      return;
    }
    for (int j = 0; j < C; ++j) {
      if (used[j] || iso[i][j].empty())
        continue;
      used[j] = 1;
      target[i] = j;
      for (auto &vm : iso[i][j]) {
        chosen[i] = &vm;
        if (consistent())
          search(i + 1);
      }
      target[i] = -1;
      chosen[i] = nullptr;
      used[j] = 0;
    }
  };
  search(0);
  return count;
}

inline Code nodal_canonical_code(const NodalGraph &ng) { return canonical_form(augment(ng).map).code; }

} // namespace rgi
