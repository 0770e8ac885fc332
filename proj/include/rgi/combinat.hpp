#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace rgi {

// Partitions of n into at most max_len positive parts, parts descending.
inline std::vector<std::vector<int>> partitions(int n, int max_len)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_len)
      return;
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (n >= 0)
    rec(n, n);
  return out;
}

// Compositions of n into exactly len positive parts.
inline std::vector<std::vector<int>> compositions(int n, int len)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == len - 1) {
      if (left >= 1) {
        cur.push_back(left);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (int p = 1; p <= left - (len - 1 - static_cast<int>(cur.size())); ++p) {
      cur.push_back(p);
      rec(left - p);
      cur.pop_back();
    }
  };
  if (len == 0) {
    if (n == 0)
      out.push_back({});
    return out;
  }
  rec(n);
  return out;
}

// Multisets of size len with entries >= 0, ascending, sum of weight(x) <= budget.
inline std::vector<std::vector<int>> bounded_multisets(int len, int budget, const std::function<int(int)> &weight)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int from, int left) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int x = from; weight(x) <= left; ++x) {
      cur.push_back(x);
      rec(x, left - weight(x));
      cur.pop_back();
    }
  };
  rec(0, budget);
  return out;
}

// Vectors of len non-negative integers summing to n, descending.
inline std::vector<std::vector<int>> padded_partitions(int n, int len)
{
  std::vector<std::vector<int>> out;
  for (auto p : partitions(n, len)) {
    p.resize(len, 0);
    out.push_back(p);
  }
  return out;
}

} // namespace rgi
