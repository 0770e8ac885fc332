#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgi {

enum class FaceKind : std::uint8_t { Face = 0, Ghost = 1, Boundary = 2 };

// Tag of the face-tracing cycle through a dart. label 0 marks an unlabeled face.
struct CycleTag
{
  FaceKind kind = FaceKind::Face;
  int label = 0;

  friend bool operator==(const CycleTag &a, const CycleTag &b)
  {
    return a.kind == b.kind && a.label == b.label;
  }
  friend bool operator!=(const CycleTag &a, const CycleTag &b) { return !(a == b); }
};

enum class GraphKind : std::uint8_t { Regular = 0, Ghost = 1, Exceptional = 2 };

inline const char *kind_name(GraphKind k)
{
  switch (k) {
  case GraphKind::Ghost: return "ghost";
  case GraphKind::Exceptional: return "exceptional";
  default: return "regular";
  }
}

// Combinatorial map of a surface with boundary. Face cycles are the cycles of
// phi = sigma o alpha; boundary cycles carry the outer side of boundary edges.
struct RibbonGraph
{
  std::vector<int> sigma;
  std::vector<int> alpha;
  std::vector<CycleTag> tag;       // per dart
  std::vector<std::uint8_t> marked; // per dart, constant on vertices
  GraphKind kind = GraphKind::Regular;

  int dart_count() const { return static_cast<int>(sigma.size()); }
  int phi(int d) const { return sigma[alpha[d]]; }
};

// Cycles of a permutation, each starting at its smallest element, ordered by it.
inline std::vector<std::vector<int>> permutation_cycles(const std::vector<int> &perm)
{
  std::vector<std::vector<int>> out;
  std::vector<char> seen(perm.size(), 0);
  for (int d = 0; d < static_cast<int>(perm.size()); ++d) {
    if (seen[d])
      continue;
    out.emplace_back();
    for (int x = d; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      out.back().push_back(x);
    }
  }
  return out;
}

inline std::vector<int> inverse_permutation(const std::vector<int> &perm)
{
  std::vector<int> inv(perm.size());
  for (int i = 0; i < static_cast<int>(perm.size()); ++i)
    inv[perm[i]] = i;
  return inv;
}

struct TraceError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct TraceResult
{
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<int>> ghost_faces;
  std::vector<std::vector<int>> boundaries;
  std::vector<int> vertex_of;        // dart -> vertex id (sigma cycle index)
  std::vector<int> cycle_of;         // dart -> index into faces/ghost_faces/boundaries
  std::vector<int> degree;           // per vertex
  std::vector<int> boundary_corners; // per vertex
  std::vector<char> vertex_marked;   // per vertex
  int v = 0, e = 0, f_int = 0, b = 0, genus = 0;
  int e_internal = 0, e_boundary = 0;
  int v_interior = 0, v_b3 = 0, v_marked = 0;
};

inline TraceResult trace(const RibbonGraph &G)
{
  const int n = G.dart_count();
  if (n == 0 || n % 2)
    throw TraceError("dart count must be even and positive");
  if (static_cast<int>(G.alpha.size()) != n || static_cast<int>(G.tag.size()) != n ||
      static_cast<int>(G.marked.size()) != n)
    throw TraceError("array size mismatch");
  std::vector<char> hit(n, 0);
  for (int d = 0; d < n; ++d) {
    int s = G.sigma[d], a = G.alpha[d];
    if (s < 0 || s >= n || a < 0 || a >= n)
      throw TraceError("dart index out of range");
    if (hit[s]++)
      throw TraceError("sigma is not a permutation");
    if (a == d || G.alpha[a] != d)
      throw TraceError("alpha is not a fixed-point-free involution");
  }

  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      for (int x : {G.sigma[d], G.alpha[d]})
        if (!seen[x]) {
          seen[x] = 1;
          ++count;
          stack.push_back(x);
        }
    }
    if (count != n)
      throw TraceError("disconnected dart set");
  }

  TraceResult r;
  auto verts = permutation_cycles(G.sigma);
  r.vertex_of.assign(n, -1);
  for (int v = 0; v < static_cast<int>(verts.size()); ++v)
    for (int d : verts[v]) {
      r.vertex_of[d] = v;
      if (G.marked[d] != G.marked[verts[v][0]])
        throw TraceError("marked flag not constant on a vertex");
    }
  r.v = static_cast<int>(verts.size());
  r.e = n / 2;

  std::vector<int> phi(n);
  for (int d = 0; d < n; ++d)
    phi[d] = G.phi(d);
  r.cycle_of.assign(n, -1);
  for (auto &c : permutation_cycles(phi)) {
    CycleTag t = G.tag[c[0]];
    for (int d : c)
      if (G.tag[d] != t)
        throw TraceError("flag/cycle mismatch");
    auto &bucket = t.kind == FaceKind::Face    ? r.faces
                   : t.kind == FaceKind::Ghost ? r.ghost_faces
                                               : r.boundaries;
    for (int d : c)
      r.cycle_of[d] = static_cast<int>(bucket.size());
    bucket.push_back(c);
  }
  r.b = static_cast<int>(r.boundaries.size());
  r.f_int = static_cast<int>(r.faces.size() + r.ghost_faces.size());
  if (r.b == 0)
    throw TraceError("no boundary cycle");

  for (int d = 0; d < n; ++d) {
    if (d > G.alpha[d])
      continue;
    bool bd = G.tag[d].kind == FaceKind::Boundary;
    bool ba = G.tag[G.alpha[d]].kind == FaceKind::Boundary;
    if (bd && ba)
      throw TraceError("edge with both sides on the boundary");
    (bd || ba ? r.e_boundary : r.e_internal) += 1;
  }

  r.degree.assign(r.v, 0);
  r.boundary_corners.assign(r.v, 0);
  r.vertex_marked.assign(r.v, 0);
  for (int d = 0; d < n; ++d) {
    int v = r.vertex_of[d];
    r.degree[v] += 1;
    if (G.tag[d].kind == FaceKind::Boundary)
      r.boundary_corners[v] += 1;
    r.vertex_marked[v] = G.marked[d];
  }
  for (int v = 0; v < r.v; ++v) {
    if (r.vertex_marked[v])
      ++r.v_marked;
    else if (r.boundary_corners[v])
      ++r.v_b3;
    else
      ++r.v_interior;
  }
  r.genus = 1 - (r.v - r.e + r.f_int);
  return r;
}

struct Classification
{
  enum class Tag { Critical, Ghost, Exceptional, Invalid };
  Tag tag = Tag::Invalid;
  int g = 0, k = 0, l = 0;
  std::string reason;
};

inline Classification classify(const RibbonGraph &G)
{
  Classification c;
  auto invalid = [&](std::string why) {
    c.tag = Classification::Tag::Invalid;
    c.reason = std::move(why);
    return c;
  };
  TraceResult t;
  try {
    t = trace(G);
  } catch (const TraceError &e) {
    return invalid(e.what());
  }

  for (int v = 0; v < t.v; ++v) {
    if (t.boundary_corners[v] > 1)
      return invalid("boundary passes a vertex twice");
    if (t.vertex_marked[v]) {
      if (t.degree[v] != 2 || t.boundary_corners[v] != 1)
        return invalid("marked vertex degree");
    } else if (t.degree[v] != 3) {
      return invalid("vertex degree");
    }
  }
  c.g = t.genus;
  c.k = t.v_marked;
  c.l = static_cast<int>(t.faces.size());

  if (G.kind == GraphKind::Ghost || G.kind == GraphKind::Exceptional) {
    if (c.l != 0 || t.ghost_faces.size() != 1 || t.b != 1)
      return invalid("special component must have one ghost-face and one boundary");
    if (t.e_internal != 0 || t.v_marked != t.v)
      return invalid("special component must be a circle of marked vertices");
    if (G.kind == GraphKind::Ghost) {
      if (t.v_marked != 3)
        return invalid("ghost needs exactly 3 marked vertices");
      c.tag = Classification::Tag::Ghost;
    } else {
      c.tag = Classification::Tag::Exceptional;
    }
    return c;
  }

  if (!t.ghost_faces.empty())
    return invalid("ghost-face on a regular graph");
  if (c.l == 0)
    return invalid("l = 0 requires a ghost");
  // labels either all absent or a bijection onto [l]
  std::vector<int> labels;
  for (auto &f : t.faces)
    labels.push_back(G.tag[f[0]].label);
  std::sort(labels.begin(), labels.end());
  bool unlabeled = std::all_of(labels.begin(), labels.end(), [](int x) { return x == 0; });
  if (!unlabeled)
    for (int i = 0; i < c.l; ++i)
      if (labels[i] != i + 1)
        return invalid("face labels are not a bijection onto [l]");
  if (c.g < 0)
    return invalid("negative genus");
  if (2 * c.g - 2 + c.k + 2 * c.l <= 0)
    return invalid("stability");
  c.tag = Classification::Tag::Critical;
  return c;
}

// ---------------------------------------------------------------------------
// Canonical codes on colored maps.

using Code = std::vector<std::uint32_t>;

struct ColoredMap
{
  std::vector<int> sigma;
  std::vector<int> alpha;
  std::vector<std::uint32_t> color;
};

inline std::uint32_t dart_color(const RibbonGraph &G, int d)
{
  const auto &t = G.tag[d];
  std::uint32_t c = static_cast<std::uint32_t>(t.label);
  c = c * 4 + static_cast<std::uint32_t>(t.kind);
  c = c * 2 + G.marked[d];
  c = c * 4 + static_cast<std::uint32_t>(G.kind);
  return c;
}

inline ColoredMap colored(const RibbonGraph &G)
{
  ColoredMap m{G.sigma, G.alpha, {}};
  for (int d = 0; d < G.dart_count(); ++d)
    m.color.push_back(dart_color(G, d));
  return m;
}

namespace detail {

// Breadth-first labeling from root. Emits (label sigma, label alpha, color)
// per dart in label order. With a bound, stops at the first position where
// the emitted code exceeds it; returns -1 / 0 / +1 relative to the bound.
inline int rooted_code(const ColoredMap &m, int root, Code &out, const Code *bound,
                       std::vector<int> *order_out = nullptr)
{
  const int n = static_cast<int>(m.sigma.size());
  std::vector<int> label(n, -1), order;
  order.reserve(n);
  label[root] = 0;
  order.push_back(root);
  out.clear();
  out.push_back(static_cast<std::uint32_t>(n));
  int cmp = 0;
  if (bound) {
    if (out[0] != (*bound)[0])
      cmp = out[0] < (*bound)[0] ? -1 : 1;
    if (cmp > 0)
      return 1;
  }
  for (int idx = 0; idx < static_cast<int>(order.size()); ++idx) {
    int d = order[idx];
    std::uint32_t vals[3];
    int k = 0;
    for (int x : {m.sigma[d], m.alpha[d]}) {
      if (label[x] < 0) {
        label[x] = static_cast<int>(order.size());
        order.push_back(x);
      }
      vals[k++] = static_cast<std::uint32_t>(label[x]);
    }
    vals[2] = m.color[d];
    for (auto v : vals) {
      std::size_t pos = out.size();
      out.push_back(v);
      if (bound && cmp == 0 && pos < bound->size() && v != (*bound)[pos]) {
        cmp = v < (*bound)[pos] ? -1 : 1;
        if (cmp > 0)
          return 1;
      }
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("canonical code requires a connected map");
  if (order_out)
    *order_out = std::move(order);
  return cmp;
}

} // namespace detail

struct CanonicalForm
{
  Code code;
  int root = 0;     // first root achieving the code
  int automorphisms = 0;
};

inline CanonicalForm canonical_form(const ColoredMap &m)
{
  const int n = static_cast<int>(m.sigma.size());
  CanonicalForm best;
  Code cur;
  for (int r = 0; r < n; ++r) {
    if (r == 0) {
      detail::rooted_code(m, r, best.code, nullptr);
      best.root = 0;
      best.automorphisms = 1;
      continue;
    }
    int cmp = detail::rooted_code(m, r, cur, &best.code);
    if (cmp < 0) {
      best.code.swap(cur);
      best.root = r;
      best.automorphisms = 1;
    } else if (cmp == 0) {
      ++best.automorphisms;
    }
  }
  return best;
}

// Roots of m whose rooted code equals the given code.
inline std::vector<int> matching_roots(const ColoredMap &m, const Code &code)
{
  std::vector<int> out;
  Code cur;
  for (int r = 0; r < static_cast<int>(m.sigma.size()); ++r)
    if (detail::rooted_code(m, r, cur, &code) == 0 && cur.size() == code.size())
      out.push_back(r);
  return out;
}

inline std::vector<int> bfs_order(const ColoredMap &m, int root)
{
  Code tmp;
  std::vector<int> order;
  detail::rooted_code(m, root, tmp, nullptr, &order);
  return order;
}

inline std::string code_hex(const Code &c)
{
  static const char *digits = "0123456789abcdef";
  std::string s;
  s.reserve(c.size() * 8);
  for (auto v : c)
    for (int sh = 28; sh >= 0; sh -= 4)
      s.push_back(digits[(v >> sh) & 0xF]);
  return s;
}

inline Code canonical_code(const RibbonGraph &G) { return canonical_form(colored(G)).code; }

inline int automorphism_order(const RibbonGraph &G)
{
  return canonical_form(colored(G)).automorphisms;
}

// Relabel darts: dart d becomes perm[d].
inline RibbonGraph relabel(const RibbonGraph &G, const std::vector<int> &perm)
{
  const int n = G.dart_count();
  RibbonGraph H;
  H.kind = G.kind;
  H.sigma.assign(n, 0);
  H.alpha.assign(n, 0);
  H.tag.assign(n, {});
  H.marked.assign(n, 0);
  for (int d = 0; d < n; ++d) {
    H.sigma[perm[d]] = perm[G.sigma[d]];
    H.alpha[perm[d]] = perm[G.alpha[d]];
    H.tag[perm[d]] = G.tag[d];
    H.marked[perm[d]] = G.marked[d];
  }
  return H;
}

// The graph relabeled so that darts follow the canonical breadth-first order.
inline RibbonGraph canonical_relabel(const RibbonGraph &G)
{
  auto m = colored(G);
  auto form = canonical_form(m);
  auto order = bfs_order(m, form.root);
  std::vector<int> perm(order.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i)
    perm[order[i]] = i;
  return relabel(G, perm);
}

// ---------------------------------------------------------------------------
// Small constructors used by tests and by the special components.

// A circle of k marked vertices with the given inner cycle tag.
inline RibbonGraph marked_circle(int k, CycleTag inner, GraphKind kind)
{
  // darts: in_s = 2s (boundary side), out_s = 2s+1 (inner side)
  RibbonGraph G;
  G.kind = kind;
  const int n = 2 * k;
  G.sigma.assign(n, 0);
  G.alpha.assign(n, 0);
  G.tag.assign(n, inner);
  G.marked.assign(n, 1);
  for (int s = 0; s < k; ++s) {
    int in = 2 * s, out = 2 * s + 1;
    int next_in = 2 * ((s + 1) % k);
    G.sigma[in] = out;
    G.sigma[out] = in;
    G.alpha[out] = next_in;
    G.alpha[next_in] = out;
    G.tag[in] = {FaceKind::Boundary, 0};
  }
  return G;
}

inline RibbonGraph ghost_graph() { return marked_circle(3, {FaceKind::Ghost, 0}, GraphKind::Ghost); }

inline RibbonGraph exceptional_graph(int vertices)
{
  return marked_circle(vertices, {FaceKind::Ghost, 0}, GraphKind::Exceptional);
}

inline RibbonGraph disk_graph(int marked_points, int label)
{
  return marked_circle(marked_points, {FaceKind::Face, label}, GraphKind::Regular);
}

} // namespace rgi
