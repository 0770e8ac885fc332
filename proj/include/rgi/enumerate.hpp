#pragma once

#include "nodal.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace rgi {

struct BoundsExceeded : std::runtime_error
{
  long long required;
  BoundsExceeded(const std::string &what, long long req) : std::runtime_error(what), required(req) {}
};

struct EnumOptions
{
  int threads = 1;
  long long leaf_cap = 0; // 0: unlimited
  int dart_max = 0;       // 0: derive
};

// RGI_RESOURCE_CAP caps the number of search leaves visited by one call.
inline long long resource_cap_from_env()
{
  const char *s = std::getenv("RGI_RESOURCE_CAP");
  if (!s || !*s)
    return 0;
  return std::atoll(s);
}

template <class T> struct Catalog
{
  std::vector<T> items;
  std::vector<Code> codes;
  int dart_bound = 0;
  long long leaves = 0;
};

namespace detail {

struct LeafCounter
{
  std::atomic<long long> leaves{0};
  long long cap = 0;
  void hit()
  {
    long long x = ++leaves;
    if (cap > 0 && x > cap)
      throw BoundsExceeded("resource cap exceeded", x);
  }
};

// Cyclic words over {H, P} with given letter counts, one per rotation class.
inline std::vector<std::string> necklaces(int h, int p)
{
  std::vector<std::string> out;
  if (h + p == 0)
    return out;
  std::string w(p, 'H');
  w = std::string(h, 'H') + std::string(p, 'P');
  std::sort(w.begin(), w.end());
  do {
    bool minimal = true;
    for (std::size_t r = 1; r < w.size() && minimal; ++r)
      if (w.substr(r) + w.substr(0, r) < w)
        minimal = false;
    if (minimal)
      out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Multisets of b nonempty necklaces with h H-letters and p P-letters in total.
inline std::vector<std::vector<std::string>> word_multisets(int b, int h, int p, bool need_h)
{
  std::vector<std::string> cand;
  for (int hh = 0; hh <= h; ++hh)
    for (int pp = 0; pp <= p; ++pp) {
      if (need_h && hh == 0)
        continue;
      for (auto &w : necklaces(hh, pp))
        cand.push_back(w);
    }
  std::sort(cand.begin(), cand.end());
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::function<void(int, int, int)> rec = [&](int from, int hl, int pl) {
    if (static_cast<int>(cur.size()) == b) {
      if (hl == 0 && pl == 0)
        out.push_back(cur);
      return;
    }
    for (int i = from; i < static_cast<int>(cand.size()); ++i) {
      int hh = static_cast<int>(std::count(cand[i].begin(), cand[i].end(), 'H'));
      int pp = static_cast<int>(cand[i].size()) - hh;
      if (hh > hl || pp > pl)
        continue;
      cur.push_back(cand[i]);
      rec(i, hl - hh, pl - pp);
      cur.pop_back();
    }
  };
  rec(0, h, p);
  return out;
}

// Darts of boundary words and cubic vertices before internal edges are drawn.
struct PieceLayout
{
  RibbonGraph base;                // alpha of half-edges left as -1
  std::vector<int> half_edges;     // dart ids awaiting a partner
  std::vector<int> piece_of;       // per dart
  int pieces = 0;
};

inline PieceLayout layout_pieces(const std::vector<std::string> &words, int cubic)
{
  PieceLayout P;
  auto &G = P.base;
  auto add = [&](CycleTag t, bool mk, int piece) {
    G.sigma.push_back(-1);
    G.alpha.push_back(-1);
    G.tag.push_back(t);
    G.marked.push_back(mk);
    P.piece_of.push_back(piece);
    return G.dart_count() - 1;
  };
  for (auto &w : words) {
    const int L = static_cast<int>(w.size());
    std::vector<int> in(L), out(L), h(L, -1);
    for (int s = 0; s < L; ++s) {
      bool mk = w[s] == 'P';
      in[s] = add({FaceKind::Boundary, 0}, mk, P.pieces);
      out[s] = add({FaceKind::Face, 0}, mk, P.pieces);
      if (!mk)
        h[s] = add({FaceKind::Face, 0}, false, P.pieces);
    }
    for (int s = 0; s < L; ++s) {
      int nxt = in[(s + 1) % L];
      G.alpha[out[s]] = nxt;
      G.alpha[nxt] = out[s];
      if (h[s] < 0) {
        G.sigma[in[s]] = out[s];
        G.sigma[out[s]] = in[s];
      } else {
        G.sigma[in[s]] = h[s];
        G.sigma[h[s]] = out[s];
        G.sigma[out[s]] = in[s];
        P.half_edges.push_back(h[s]);
      }
    }
    ++P.pieces;
  }
  for (int c = 0; c < cubic; ++c) {
    int d0 = add({FaceKind::Face, 0}, false, P.pieces);
    int d1 = add({FaceKind::Face, 0}, false, P.pieces);
    int d2 = add({FaceKind::Face, 0}, false, P.pieces);
    G.sigma[d0] = d1;
    G.sigma[d1] = d2;
    G.sigma[d2] = d0;
    P.half_edges.insert(P.half_edges.end(), {d0, d1, d2});
    ++P.pieces;
  }
  return P;
}

inline int count_faces(const RibbonGraph &G, std::vector<char> &seen)
{
  const int n = G.dart_count();
  seen.assign(n, 0);
  int f = 0;
  for (int d = 0; d < n; ++d) {
    if (seen[d] || G.tag[d].kind == FaceKind::Boundary)
      continue;
    ++f;
    for (int x = d; !seen[x]; x = G.phi(x))
      seen[x] = 1;
  }
  return f;
}

inline bool pieces_connected(const PieceLayout &P, const RibbonGraph &G)
{
  std::vector<int> parent(P.pieces);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int d : P.half_edges)
    parent[find(P.piece_of[d])] = find(P.piece_of[G.alpha[d]]);
  for (int i = 1; i < P.pieces; ++i)
    if (find(i) != find(0))
      return false;
  return true;
}

inline std::vector<std::vector<int>> face_cycles(const RibbonGraph &G)
{
  return trace(G).faces;
}

// All labelings of the faces of an unlabeled graph, deduplicated.
inline void expand_labels(const RibbonGraph &U, std::map<Code, RibbonGraph> &out)
{
  auto faces = face_cycles(U);
  std::vector<int> perm(faces.size());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    RibbonGraph G = U;
    for (std::size_t f = 0; f < faces.size(); ++f)
      for (int d : faces[f])
        G.tag[d].label = perm[f];
    auto code = canonical_code(G);
    if (!out.count(code))
      out.emplace(std::move(code), std::move(G));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace detail

inline int component_dart_count(int g, int k, int l) { return 2 * k + 6 * (l + g - 1); }

class Enumerator
{
public:
  explicit Enumerator(EnumOptions opt = {}) : opt_(opt)
  {
    if (opt_.leaf_cap == 0)
      opt_.leaf_cap = resource_cap_from_env();
  }

  const EnumOptions &options() const { return opt_; }

  // Critical (g,k,l) graphs with unlabeled faces, one per class, sorted by code.
  const Catalog<RibbonGraph> &components_unlabeled(int g, int k, int l)
  {
    auto key = std::make_tuple(g, k, l);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = unlabeled_.find(key);
      if (it != unlabeled_.end())
        return it->second;
    }
    Catalog<RibbonGraph> cat = build_unlabeled(g, k, l);
    std::lock_guard<std::mutex> lk(mu_);
    return unlabeled_.emplace(key, std::move(cat)).first->second;
  }

  std::vector<std::tuple<int, int, int>> cached_component_sectors()
  {
    std::lock_guard<std::mutex> lk(mu_);
    std::vector<std::tuple<int, int, int>> out;
    for (auto &kv : unlabeled_)
      out.push_back(kv.first);
    return out;
  }

  // Critical (g,k,l) graphs with faces labeled by [l].
  Catalog<RibbonGraph> gen_components(int g, int k, int l)
  {
    const auto &U = components_unlabeled(g, k, l);
    Catalog<RibbonGraph> out;
    out.dart_bound = U.dart_bound;
    out.leaves = U.leaves;
    std::map<Code, RibbonGraph> acc;
    for (auto &G : U.items) {
      if (G.kind != GraphKind::Regular) {
        acc.emplace(canonical_code(G), G);
        continue;
      }
      detail::expand_labels(G, acc);
    }
    for (auto &kv : acc) {
      out.codes.push_back(kv.first);
      out.items.push_back(kv.second);
    }
    return out;
  }

  Catalog<RibbonGraph> gen_kp(int n, int genus_max)
  {
    if (n < 1)
      throw std::invalid_argument("gen_kp: n >= 1 required");
    Catalog<RibbonGraph> out;
    std::map<Code, RibbonGraph> acc;
    for (int g = 0; g <= genus_max; ++g) {
      auto c = gen_components(g, 0, n);
      out.dart_bound = std::max(out.dart_bound, c.dart_bound);
      out.leaves += c.leaves;
      for (std::size_t i = 0; i < c.items.size(); ++i)
        acc.emplace(c.codes[i], c.items[i]);
    }
    for (auto &kv : acc) {
      out.codes.push_back(kv.first);
      out.items.push_back(kv.second);
    }
    return out;
  }

  struct NodalEntry
  {
    NodalGraph graph;
    SmoothingProfile profile;
  };

  // Odd critical nodal graphs of smoothing genus g, k free marked points, l faces (unlabeled).
  const Catalog<NodalEntry> &refined_unlabeled(int g, int k, int l)
  {
    auto key = std::make_tuple(g, k, l);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = refined_.find(key);
      if (it != refined_.end())
        return it->second;
    }
    auto cat = build_nodal(g, l, k, {}, OddMode::Critical);
    std::lock_guard<std::mutex> lk(mu_);
    return refined_.emplace(key, std::move(cat)).first->second;
  }

  const Catalog<NodalEntry> &extended_unlabeled(int g, int l, std::vector<int> exc)
  {
    std::sort(exc.begin(), exc.end());
    auto key = std::make_tuple(g, l, exc);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = extended_.find(key);
      if (it != extended_.end())
        return it->second;
    }
    auto cat = build_nodal(g, l, 0, exc, OddMode::Extended);
    std::lock_guard<std::mutex> lk(mu_);
    return extended_.emplace(key, std::move(cat)).first->second;
  }

  // Family R~*_{g,kbar,l}; kbar in any order.
  Catalog<NodalEntry> gen_nodal_kbar(int g, std::vector<int> kbar, int l)
  {
    std::sort(kbar.rbegin(), kbar.rend());
    int k = std::accumulate(kbar.begin(), kbar.end(), 0);
    return label_filtered(refined_unlabeled(g, k, l),
                          [&](const SmoothingProfile &p) { return p.kbar == kbar; });
  }

  // Family R~*_{g,b,k,l}.
  Catalog<NodalEntry> gen_nodal_b(int g, int k, int b, int l)
  {
    return label_filtered(refined_unlabeled(g, k, l),
                          [&](const SmoothingProfile &p) { return p.b == b; });
  }

  Catalog<NodalEntry> gen_extended(int g, int l, std::vector<int> exc)
  {
    return label_filtered(extended_unlabeled(g, l, std::move(exc)),
                          [](const SmoothingProfile &) { return true; });
  }

private:
  Catalog<RibbonGraph> build_unlabeled(int g, int k, int l)
  {
    Catalog<RibbonGraph> cat;
    if (g == 0 && k == 3 && l == 0) {
      cat.items.push_back(ghost_graph());
      cat.codes.push_back(canonical_code(cat.items.back()));
      cat.dart_bound = 6;
      return cat;
    }
    if (l < 1 || g < 0 || k < 0 || 2 * g - 2 + k + 2 * l <= 0)
      return cat;
    const int V = 2 * (l + g - 1);
    cat.dart_bound = component_dart_count(g, k, l);
    if (opt_.dart_max > 0 && opt_.dart_max < cat.dart_bound)
      throw BoundsExceeded("dart bound too small for exhaustive search", cat.dart_bound);

    struct Config
    {
      std::vector<std::string> words;
      int cubic;
    };
    std::vector<Config> configs;
    for (int b = 1; b <= g + 1; ++b) {
      if ((g + 1 - b) % 2)
        continue;
      for (int vb3 = 0; vb3 <= V; ++vb3) {
        int vi = V - vb3;
        if ((3 * vi + vb3) % 2 || vb3 + k < b)
          continue;
        bool need_h = !(b == 1 && vi == 0 && vb3 == 0);
        for (auto &ws : detail::word_multisets(b, vb3, k, need_h))
          configs.push_back({ws, vi});
      }
    }

    // tasks: (config, partner of the first half-edge)
    std::vector<detail::PieceLayout> layouts;
    std::vector<std::pair<int, int>> tasks;
    for (std::size_t c = 0; c < configs.size(); ++c) {
      layouts.push_back(detail::layout_pieces(configs[c].words, configs[c].cubic));
      int m = static_cast<int>(layouts.back().half_edges.size());
      if (m == 0)
        tasks.emplace_back(static_cast<int>(c), -1);
      for (int p = 1; p < m; ++p)
        tasks.emplace_back(static_cast<int>(c), p);
    }

    const int T = std::max(1, opt_.threads);
    std::vector<std::map<Code, RibbonGraph>> local(T);
    detail::LeafCounter counter;
    counter.cap = opt_.leaf_cap;

    run_tasks(static_cast<int>(tasks.size()), T, [&](int t, int w) {
      const auto &P = layouts[tasks[t].first];
      RibbonGraph G = P.base;
      const auto &H = P.half_edges;
      const int m = static_cast<int>(H.size());
      std::vector<char> used(m, 0), seen;
      auto &acc = local[w];
      auto leaf = [&]() {
        counter.hit();
        if (!detail::pieces_connected(P, G))
          return;
        if (detail::count_faces(G, seen) != l)
          return;
        auto form = canonical_form(colored(G));
        if (!acc.count(form.code))
          acc.emplace(std::move(form.code), G);
      };
      std::function<void()> rec = [&]() {
        int i = 0;
        while (i < m && used[i])
          ++i;
        if (i == m) {
          leaf();
          return;
        }
        used[i] = 1;
        for (int j = i + 1; j < m; ++j) {
          if (used[j])
            continue;
          used[j] = 1;
          G.alpha[H[i]] = H[j];
          G.alpha[H[j]] = H[i];
          rec();
          used[j] = 0;
        }
        used[i] = 0;
      };
      if (tasks[t].second < 0) {
        leaf();
        return;
      }
      int p = tasks[t].second;
      used[0] = used[p] = 1;
      G.alpha[H[0]] = H[p];
      G.alpha[H[p]] = H[0];
      rec();
    });

    std::map<Code, RibbonGraph> merged;
    for (auto &mp : local)
      for (auto &kv : mp)
        merged.emplace(kv.first, kv.second);
    for (auto &kv : merged) {
      cat.codes.push_back(kv.first);
      cat.items.push_back(kv.second);
    }
    cat.leaves = counter.leaves;
    return cat;
  }

  struct CompType
  {
    int g, l, k;
    friend bool operator<(const CompType &a, const CompType &b)
    {
      return std::tie(a.g, a.l, a.k) < std::tie(b.g, b.l, b.k);
    }
    friend bool operator==(const CompType &a, const CompType &b)
    {
      return std::tie(a.g, a.l, a.k) == std::tie(b.g, b.l, b.k);
    }
  };

  struct Plan
  {
    std::vector<CompType> types;
    int ghosts = 0;
    int nodes = 0;
  };

  // Admissible component-type multisets for a nodal family.
  static std::vector<Plan> plans(int g, int l, int kfree, const std::vector<int> &exc, OddMode mode)
  {
    std::vector<Plan> out;
    const int X = static_cast<int>(exc.size());
    int S = 0;
    for (int m : exc)
      S += m + 1;
    if (mode == OddMode::Critical && X)
      return out;

    auto finish = [&](const std::vector<CompType> &types) {
      int C = static_cast<int>(types.size());
      int sg = 0, sk = 0;
      for (auto &t : types) {
        sg += t.g;
        sk += t.k;
      }
      int ng = 2 * g - 2 - 2 * sg + 2 * C + 2 * X - S + kfree - sk;
      if (ng < 0)
        return;
      int n = g - 1 - sg + C + ng + X;
      if (n < 0)
        return;
      if (C + ng + X - 1 > n)
        return; // cannot be connected
      if (mode == OddMode::Extended) {
        int crit_legal = n - 3 * ng;
        int crit_illegal = n - S;
        if (crit_legal < C || crit_illegal < 0 || crit_legal + crit_illegal != sk)
          return;
      } else {
        // ghosts supply legal or free points only, illegal sides sit on critical components
        if (n > sk)
          return;
        if (3 * ng > n + kfree)
          return;
      }
      if (C == 0 && ng == 0 && X == 0)
        return;
      out.push_back({types, ng, n});
    };

    if (l == 0) {
      finish({});
      return out;
    }
    std::vector<CompType> cur;
    std::function<void(int, int, int, CompType)> rec = [&](int C, int lleft, int gleft, CompType lo) {
      if (static_cast<int>(cur.size()) == C) {
        if (lleft == 0)
          finish(cur);
        return;
      }
      int remaining = C - static_cast<int>(cur.size());
      int kmax = 2 * g + 2 * C + 2 * X + kfree + 2;
      for (int gi = 0; gi <= gleft; ++gi)
        for (int li = 1; li <= lleft - (remaining - 1); ++li)
          for (int ki = 1; ki <= kmax; ++ki) {
            CompType t{gi, li, ki};
            if (t < lo)
              continue;
            if (2 * gi - 2 + ki + 2 * li <= 0)
              continue;
            cur.push_back(t);
            rec(C, lleft - li, gleft - gi, t);
            cur.pop_back();
          }
    };
    for (int C = 1; C <= l; ++C)
      rec(C, l, g, CompType{0, 0, 0});
    return out;
  }

  struct CompData
  {
    const RibbonGraph *graph;
    TraceResult tr;
    std::vector<int> marked;         // marked vertex ids
    std::vector<int> boundary_idx;   // per marked vertex
    std::vector<int> boundary_dart;  // per marked vertex
  };

  static CompData comp_data(const RibbonGraph *G)
  {
    CompData c{G, trace(*G), {}, {}, {}};
    for (int v = 0; v < c.tr.v; ++v)
      if (c.tr.vertex_marked[v]) {
        int d = boundary_dart(*G, c.tr, v);
        c.marked.push_back(v);
        c.boundary_idx.push_back(c.tr.cycle_of[d]);
        c.boundary_dart.push_back(d);
      }
    return c;
  }

  Catalog<NodalEntry> build_nodal(int g, int l, int kfree, const std::vector<int> &exc, OddMode mode)
  {
    Catalog<NodalEntry> cat;
    static const RibbonGraph ghost = ghost_graph();
    std::vector<RibbonGraph> exc_graphs;
    for (int m : exc)
      exc_graphs.push_back(exceptional_graph(m + 1));

    // every concrete component list
    std::vector<std::vector<const RibbonGraph *>> lists;
    for (auto &plan : plans(g, l, kfree, exc, mode)) {
      std::vector<const Catalog<RibbonGraph> *> cats;
      bool empty = false;
      for (auto &t : plan.types) {
        cats.push_back(&components_unlabeled(t.g, t.k, t.l));
        if (cats.back()->items.empty())
          empty = true;
      }
      if (empty)
        continue;
      int bound = 6 * plan.ghosts + 2 * plan.nodes;
      for (auto &t : plan.types)
        bound += component_dart_count(t.g, t.k, t.l);
      for (int m : exc)
        bound += 2 * (m + 1);
      cat.dart_bound = std::max(cat.dart_bound, bound);

      std::vector<const RibbonGraph *> cur;
      std::function<void(int, int)> choose = [&](int i, int from) {
        if (i == static_cast<int>(plan.types.size())) {
          auto full = cur;
          for (int q = 0; q < plan.ghosts; ++q)
            full.push_back(&ghost);
          for (auto &e : exc_graphs)
            full.push_back(&e);
          lists.push_back(std::move(full));
          return;
        }
        int start = (i > 0 && plan.types[i] == plan.types[i - 1]) ? from : 0;
        for (int j = start; j < static_cast<int>(cats[i]->items.size()); ++j) {
          cur.push_back(&cats[i]->items[j]);
          choose(i + 1, j);
          cur.pop_back();
        }
      };
      choose(0, 0);
    }
    if (opt_.dart_max > 0 && opt_.dart_max < cat.dart_bound)
      throw BoundsExceeded("dart bound too small for exhaustive search", cat.dart_bound);

    const int T = std::max(1, opt_.threads);
    std::vector<std::map<Code, NodalGraph>> local(T);
    detail::LeafCounter counter;
    counter.cap = opt_.leaf_cap;
    run_tasks(static_cast<int>(lists.size()), T, [&](int t, int w) {
      assemble_list(lists[t], kfree, mode, local[w], counter);
    });

    std::map<Code, NodalGraph> merged;
    for (auto &mp : local)
      for (auto &kv : mp)
        merged.emplace(kv.first, kv.second);
    for (auto &kv : merged) {
      auto prof = smooth(kv.second);
      if (prof.genus != g)
        throw std::logic_error("nodal assembly produced a graph of the wrong genus");
      cat.codes.push_back(kv.first);
      cat.items.push_back({kv.second, prof});
    }
    cat.leaves = counter.leaves;
    return cat;
  }

  static void assemble_list(const std::vector<const RibbonGraph *> &comps, int kfree, OddMode mode,
                            std::map<Code, NodalGraph> &out, detail::LeafCounter &counter)
  {
    const int C = static_cast<int>(comps.size());
    std::vector<CompData> data;
    for (auto *G : comps)
      data.push_back(comp_data(G));

    struct Slot
    {
      int comp, idx;
      bool can_free, can_legal, can_illegal;
    };
    std::vector<Slot> slots;
    int total = 0;
    for (int c = 0; c < C; ++c) {
      auto kind = comps[c]->kind;
      for (int i = 0; i < static_cast<int>(data[c].marked.size()); ++i) {
        Slot s{c, i, false, false, false};
        if (mode == OddMode::Critical) {
          s.can_free = true;
          s.can_legal = kind != GraphKind::Exceptional;
          s.can_illegal = kind == GraphKind::Regular;
        } else {
          s.can_legal = kind != GraphKind::Exceptional;
          s.can_illegal = kind != GraphKind::Ghost;
        }
        slots.push_back(s);
        ++total;
      }
    }
    if ((total - kfree) % 2 || total < kfree)
      return;
    const int n = (total - kfree) / 2;

    // concatenated base map
    ColoredMap base;
    std::vector<int> offset;
    for (int c = 0; c < C; ++c) {
      offset.push_back(static_cast<int>(base.sigma.size()));
      const auto &G = *comps[c];
      for (int d = 0; d < G.dart_count(); ++d) {
        base.sigma.push_back(G.sigma[d] + offset[c]);
        base.alpha.push_back(G.alpha[d] + offset[c]);
        base.color.push_back(dart_color(G, d));
      }
    }
    const auto base_inv = inverse_permutation(base.sigma);

    std::vector<char> role(slots.size(), 0); // 0 free, 1 legal, 2 illegal
    int nf = 0, nl = 0, ni = 0;

    auto component_odd = [&](int c, std::size_t first, std::size_t last) {
      if (mode == OddMode::Extended && comps[c]->kind == GraphKind::Exceptional)
        return true;
      std::vector<int> cnt(data[c].tr.b, 0);
      for (std::size_t s = first; s < last; ++s)
        if (role[s] == 1 || (mode == OddMode::Critical && role[s] == 0))
          cnt[data[c].boundary_idx[slots[s].idx]] += 1;
      for (int x : cnt)
        if (x % 2 == 0)
          return false;
      return true;
    };

    std::vector<std::size_t> comp_first(C + 1, 0);
    for (std::size_t s = 0; s < slots.size(); ++s)
      comp_first[slots[s].comp + 1] = s + 1;
    for (int c = 1; c <= C; ++c)
      comp_first[c] = std::max(comp_first[c], comp_first[c - 1]);

    auto pair_up = [&]() {
      std::vector<int> legal, illegal;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (role[s] == 1)
          legal.push_back(static_cast<int>(s));
        else if (role[s] == 2)
          illegal.push_back(static_cast<int>(s));
      }
      std::vector<int> perm(illegal.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<int> parent(C);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      do {
        counter.hit();
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t q = 0; q < legal.size(); ++q)
          parent[find(slots[legal[q]].comp)] = find(slots[illegal[perm[q]]].comp);
        bool conn = true;
        for (int c = 1; c < C && conn; ++c)
          conn = find(c) == find(0);
        if (!conn)
          continue;
        ColoredMap m = base;
        auto inv = base_inv;
        auto insert = [&](int s, EndRole r) {
          int d = data[slots[s].comp].boundary_dart[slots[s].idx] + offset[slots[s].comp];
          int z = static_cast<int>(m.sigma.size());
          int prev = inv[d];
          m.sigma.push_back(d);
          m.sigma[prev] = z;
          inv.push_back(prev);
          inv[d] = z;
          m.alpha.push_back(-1);
          m.color.push_back(node_color(r));
          return z;
        };
        for (std::size_t q = 0; q < legal.size(); ++q) {
          int zl = insert(legal[q], EndRole::Legal);
          int zi = insert(illegal[perm[q]], EndRole::Illegal);
          m.alpha[zl] = zi;
          m.alpha[zi] = zl;
        }
        auto code = canonical_form(m).code;
        if (out.count(code))
          continue;
        NodalGraph ng;
        for (auto *G : comps)
          ng.components.push_back(*G);
        for (std::size_t q = 0; q < legal.size(); ++q) {
          const auto &a = slots[legal[q]];
          const auto &b = slots[illegal[perm[q]]];
          ng.nodes.push_back({{a.comp, data[a.comp].marked[a.idx]}, {b.comp, data[b.comp].marked[b.idx]}});
        }
        out.emplace(std::move(code), std::move(ng));
      } while (std::next_permutation(perm.begin(), perm.end()));
    };

    std::function<void(std::size_t)> rec = [&](std::size_t s) {
      if (s > 0) {
        int c = slots[s - 1].comp;
        if (s == comp_first[c + 1] && !component_odd(c, comp_first[c], comp_first[c + 1]))
          return;
      }
      if (s == slots.size()) {
        if (nf == kfree && nl == n && ni == n)
          pair_up();
        return;
      }
      const auto &sl = slots[s];
      if (sl.can_free && nf < kfree) {
        role[s] = 0;
        ++nf;
        rec(s + 1);
        --nf;
      }
      if (sl.can_legal && nl < n) {
        role[s] = 1;
        ++nl;
        rec(s + 1);
        --nl;
      }
      if (sl.can_illegal && ni < n) {
        role[s] = 2;
        ++ni;
        rec(s + 1);
        --ni;
      }
    };
    rec(0);
  }

  template <class Pred>
  static Catalog<NodalEntry> label_filtered(const Catalog<NodalEntry> &U, Pred keep)
  {
    Catalog<NodalEntry> out;
    out.dart_bound = U.dart_bound;
    out.leaves = U.leaves;
    std::map<Code, NodalEntry> acc;
    for (auto &e : U.items) {
      if (!keep(e.profile))
        continue;
      // faces across components
      std::vector<std::pair<int, std::vector<int>>> faces;
      for (int c = 0; c < static_cast<int>(e.graph.components.size()); ++c)
        if (e.graph.components[c].kind == GraphKind::Regular)
          for (auto &f : trace(e.graph.components[c]).faces)
            faces.emplace_back(c, f);
      std::vector<int> perm(faces.size());
      std::iota(perm.begin(), perm.end(), 1);
      do {
        NodalEntry L = e;
        for (std::size_t f = 0; f < faces.size(); ++f)
          for (int d : faces[f].second)
            L.graph.components[faces[f].first].tag[d].label = perm[f];
        auto code = nodal_canonical_code(L.graph);
        if (!acc.count(code))
          acc.emplace(std::move(code), std::move(L));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (auto &kv : acc) {
      out.codes.push_back(kv.first);
      out.items.push_back(kv.second);
    }
    return out;
  }

  EnumOptions opt_;
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, Catalog<RibbonGraph>> unlabeled_;
  std::map<std::tuple<int, int, int>, Catalog<NodalEntry>> refined_;
  std::map<std::tuple<int, int, std::vector<int>>, Catalog<NodalEntry>> extended_;
};

} // namespace rgi
