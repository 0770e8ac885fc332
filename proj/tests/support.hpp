#pragma once

// Test-side reference computations, written without the library's search code.

#include "rgi/ribbon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace testsupport {

using namespace rgi;

// |Aut| by trying every dart permutation (n <= 8).
inline int aut_by_all_permutations(const RibbonGraph &G)
{
  const int n = G.dart_count();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  int count = 0;
  do {
    bool ok = true;
    for (int d = 0; d < n && ok; ++d)
      ok = p[G.sigma[d]] == G.sigma[p[d]] && p[G.alpha[d]] == G.alpha[p[d]] && G.tag[d] == G.tag[p[d]] &&
           G.marked[d] == G.marked[p[d]];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// |Aut| by propagating the image of dart 0 (connected maps, any size).
inline int aut_by_propagation(const std::vector<int> &sigma, const std::vector<int> &alpha,
                              const std::vector<long long> &color)
{
  const int n = static_cast<int>(sigma.size());
  int count = 0;
  for (int img = 0; img < n; ++img) {
    std::vector<int> p(n, -1);
    std::vector<int> stack{0};
    p[0] = img;
    bool ok = true;
    while (!stack.empty() && ok) {
      int d = stack.back();
      stack.pop_back();
      if (color[d] != color[p[d]]) {
        ok = false;
        break;
      }
      std::pair<int, int> steps[] = {{sigma[d], sigma[p[d]]}, {alpha[d], alpha[p[d]]}};
      for (auto [x, y] : steps) {
        if (p[x] < 0) {
          p[x] = y;
          stack.push_back(x);
        } else if (p[x] != y) {
          ok = false;
        }
      }
    }
    if (!ok)
      continue;
    std::vector<char> hit(n, 0);
    for (int x : p)
      if (x < 0 || hit[x]++)
        ok = false;
    count += ok;
  }
  return count;
}

inline std::vector<long long> plain_colors(const RibbonGraph &G)
{
  std::vector<long long> c;
  for (int d = 0; d < G.dart_count(); ++d)
    c.push_back(static_cast<long long>(G.tag[d].kind) * 1000 + G.tag[d].label * 2 + G.marked[d]);
  return c;
}

inline RibbonGraph shuffled(const RibbonGraph &G, std::mt19937 &rng)
{
  std::vector<int> p(G.dart_count());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return relabel(G, p);
}

// Sum over all labeled structures on n darts of the critical (g,k,l) type,
// divided later by n!: sigma ranges over permutations of cycle type 3^a 2^k,
// alpha over fixed-point-free involutions, and the boundary over subsets of
// face cycles.
inline long long brute_labeled_structures(int g, int k, int l)
{
  const int n = 2 * k + 6 * (l + g - 1);
  if (n <= 0 || (n - 2 * k) % 3)
    return 0;
  const int a = (n - 2 * k) / 3;
  long long total = 0;

  std::vector<int> sigma(n, -1), alpha(n, -1);
  std::vector<char> marked(n, 0);

  std::function<void()> on_map = [&]() {
    RibbonGraph G;
    G.sigma = sigma;
    G.alpha = alpha;
    G.marked.assign(marked.begin(), marked.end());
    G.tag.assign(n, {FaceKind::Face, 0});
    std::vector<int> phi(n);
    for (int d = 0; d < n; ++d)
      phi[d] = sigma[alpha[d]];
    auto cycles = permutation_cycles(phi);
    const int C = static_cast<int>(cycles.size());
    for (int mask = 1; mask < (1 << C); ++mask) {
      if (C - __builtin_popcount(mask) != l)
        continue;
      for (int c = 0; c < C; ++c)
        for (int d : cycles[c])
          G.tag[d] = (mask >> c & 1) ? CycleTag{FaceKind::Boundary, 0} : CycleTag{FaceKind::Face, 0};
      auto cl = classify(G);
      if (cl.tag == Classification::Tag::Critical && cl.g == g && cl.k == k && cl.l == l)
        ++total;
    }
  };

  std::function<void()> pick_alpha = [&]() {
    int i = 0;
    while (i < n && alpha[i] >= 0)
      ++i;
    if (i == n) {
      on_map();
      return;
    }
    for (int j = i + 1; j < n; ++j)
      if (alpha[j] < 0) {
        alpha[i] = j;
        alpha[j] = i;
        pick_alpha();
        alpha[i] = alpha[j] = -1;
      }
  };

  // sigma: choose the cycles containing the smallest free dart
  std::function<void(int, int)> pick_sigma = [&](int threes, int twos) {
    int i = 0;
    while (i < n && sigma[i] >= 0)
      ++i;
    if (i == n) {
      pick_alpha();
      return;
    }
    if (twos > 0)
      for (int j = i + 1; j < n; ++j)
        if (sigma[j] < 0) {
          sigma[i] = j;
          sigma[j] = i;
          marked[i] = marked[j] = 1;
          pick_sigma(threes, twos - 1);
          sigma[i] = sigma[j] = -1;
          marked[i] = marked[j] = 0;
        }
    if (threes > 0)
      for (int j = i + 1; j < n; ++j)
        for (int m = i + 1; m < n; ++m)
          if (j != m && sigma[j] < 0 && sigma[m] < 0) {
            sigma[i] = j;
            sigma[j] = m;
            sigma[m] = i;
            pick_sigma(threes - 1, twos);
            sigma[i] = sigma[j] = sigma[m] = -1;
          }
  };
  pick_sigma(a, k);
  return total;
}

} // namespace testsupport
