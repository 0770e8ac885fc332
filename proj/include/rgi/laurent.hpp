#pragma once

#include "npoly.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rgi {

// One factor of a graph weight; variable indices are 1-based face labels.
struct EdgeFactor
{
  enum class Kind { InverseSum, PurePower, Unit };

  Kind kind = Kind::Unit;
  int i = 0, j = 0;
  int e = 0;
  Rational coef = 1;

  static EdgeFactor inverse_sum(int i, int j, Rational coef = 1)
  {
    EdgeFactor f;
    f.kind = Kind::InverseSum;
    f.i = std::min(i, j);
    f.j = std::max(i, j);
    f.coef = std::move(coef);
    return f;
  }

  static EdgeFactor pure_power(int i, int e, Rational coef = 1)
  {
    if (e >= 0 || e % 2 == 0)
      throw std::invalid_argument("pure-power exponent must be negative and odd");
    EdgeFactor f;
    f.kind = Kind::PurePower;
    f.i = i;
    f.e = e;
    f.coef = std::move(coef);
    return f;
  }

  static EdgeFactor unit() { return {}; }

  int degree() const
  {
    switch (kind) {
    case Kind::InverseSum: return -1;
    case Kind::PurePower: return e;
    default: return 0;
    }
  }
};

inline int total_degree(const std::vector<EdgeFactor> &product)
{
  int d = 0;
  for (auto &f : product)
    d += f.degree();
  return d;
}

// Coefficient of prod_i lambda_i^{target_i} in the expansion of the product
// in the region lambda_1 >> lambda_2 >> ... >> lambda_l.
inline NPoly coefficient_of(const std::vector<EdgeFactor> &product,
                            const std::vector<int> &target)
{
  if (product.empty())
    throw std::invalid_argument("coefficient_of: empty product");
  const int L = static_cast<int>(target.size());
  for (int t : target)
    if (t > 0)
      throw std::invalid_argument("coefficient_of: positive target exponent");

  Rational scalar = 1;
  std::vector<int> fixed(L + 1, 0);
  std::vector<std::pair<int, int>> pairs;
  auto check = [&](int v) {
    if (v < 1 || v > L)
      throw std::invalid_argument("coefficient_of: variable index out of range");
  };
  for (auto &f : product) {
    scalar *= f.coef;
    switch (f.kind) {
    case EdgeFactor::Kind::InverseSum:
      check(f.i);
      check(f.j);
      if (f.i == f.j) {
        scalar /= 2;
        fixed[f.i] -= 1;
      } else {
        pairs.emplace_back(f.i, f.j);
      }
      break;
    case EdgeFactor::Kind::PurePower:
      check(f.i);
      fixed[f.i] += f.e;
      break;
    case EdgeFactor::Kind::Unit: break;
    }
  }

  int tsum = 0;
  for (int t : target)
    tsum += t;
  if (tsum != total_degree(product) || scalar == 0)
    return {};

  // pair p = (i, j), i < j contributes lambda_i^{-1-k_p} lambda_j^{k_p} (-1)^{k_p}
  std::vector<std::vector<int>> by_small(L + 1), by_big(L + 1);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    by_big[pairs[p].first].push_back(static_cast<int>(p));
    by_small[pairs[p].second].push_back(static_cast<int>(p));
  }

  std::vector<int> k(pairs.size(), 0);
  std::int64_t total = 0;

  std::function<void(int, int)> step;
  std::function<void(int, int, int, int)> spread;

  step = [&](int j, int sign) {
    if (j == 0) {
      total += sign;
      return;
    }
    int S = target[j - 1] - fixed[j];
    for (int p : by_big[j])
      S += 1 + k[p];
    auto &low = by_small[j];
    if (low.empty()) {
      if (S == 0)
        step(j - 1, sign);
      return;
    }
    if (S < 0)
      return;
    spread(j, 0, S, S % 2 ? -sign : sign);
  };

  spread = [&](int j, int idx, int left, int sign) {
    auto &low = by_small[j];
    if (idx + 1 == static_cast<int>(low.size())) {
      k[low[idx]] = left;
      step(j - 1, sign);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      k[low[idx]] = x;
      spread(j, idx + 1, left - x, sign);
    }
  };

  step(L, 1);
  return NPoly(scalar * Rational(total));
}

} // namespace rgi
