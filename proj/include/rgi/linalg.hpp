#pragma once

#include "npoly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rgi {

struct SingularMatrix : std::runtime_error
{
  int rank;
  explicit SingularMatrix(int r)
  : std::runtime_error("singular matrix, rank " + std::to_string(r)), rank(r)
  {}
};

using RationalMatrix = std::vector<std::vector<Rational>>;

inline int matrix_rank(RationalMatrix a)
{
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0)
        continue;
      Rational f = a[r][c] / a[rank][c];
      for (int cc = c; cc < cols; ++cc)
        a[r][cc] -= f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) elimination on the row-scaled integer matrix; the
// right-hand side is carried coefficient-wise in N.
inline std::vector<NPoly> solve_linear(const RationalMatrix &A, const std::vector<NPoly> &rhs)
{
  const int n = static_cast<int>(A.size());
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve_linear: rhs size mismatch");
  for (auto &row : A)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_linear: matrix not square");
  if (n == 0)
    return {};

  int width = 0;
  for (auto &p : rhs)
    width = std::max(width, p.degree() + 1);

  std::vector<std::vector<Integer>> M(n, std::vector<Integer>(n));
  std::vector<std::vector<Rational>> B(n, std::vector<Rational>(width));
  for (int r = 0; r < n; ++r) {
    Integer l = 1;
    for (auto &x : A[r])
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    for (int c = 0; c < n; ++c)
      M[r][c] = boost::multiprecision::numerator(Rational(A[r][c] * l));
    for (int w = 0; w < width; ++w)
      B[r][w] = rhs[r].coeff(w) * l;
  }

  Integer prev = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (M[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw SingularMatrix(matrix_rank(A));
    std::swap(M[piv], M[k]);
    std::swap(B[piv], B[k]);
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c)
        M[r][c] = (M[k][k] * M[r][c] - M[r][k] * M[k][c]) / prev;
      for (int w = 0; w < width; ++w)
        B[r][w] = (Rational(M[k][k]) * B[r][w] - Rational(M[r][k]) * B[k][w]) / Rational(prev);
      M[r][k] = 0;
    }
    prev = M[k][k];
  }

  std::vector<std::vector<Rational>> X(n, std::vector<Rational>(width));
  for (int r = n - 1; r >= 0; --r)
    for (int w = 0; w < width; ++w) {
      Rational s = B[r][w];
      for (int c = r + 1; c < n; ++c)
        s -= Rational(M[r][c]) * X[c][w];
      X[r][w] = s / Rational(M[r][r]);
    }

  std::vector<NPoly> x;
  for (auto &row : X)
    x.emplace_back(row);

  for (int r = 0; r < n; ++r) {
    NPoly s;
    for (int c = 0; c < n; ++c)
      s += x[c] * A[r][c];
    if (s != rhs[r])
      throw std::logic_error("solve_linear: back-substitution mismatch");
  }
  return x;
}

} // namespace rgi
