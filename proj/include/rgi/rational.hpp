#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rgi {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" form, q > 0, "0/1" for zero.
inline std::string to_string(const Rational &q)
{
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline Rational parse_rational(const std::string &s)
{
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(Integer(s.c_str()));
  Integer den(s.substr(slash + 1).c_str());
  if (den == 0)
    throw std::invalid_argument("parse_rational: zero denominator in " + s);
  return Rational(Integer(s.substr(0, slash).c_str()), den);
}

inline Integer factorial(int n)
{
  Integer r = 1;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

// (2a-1)!! with the convention (-1)!! = 1.
inline Integer double_factorial(int n)
{
  Integer r = 1;
  for (int i = n; i > 1; i -= 2)
    r *= i;
  return r;
}

inline Integer binomial(int n, int k)
{
  if (k < 0 || k > n)
    return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Integer catalan(int m) { return binomial(2 * m, m) / (m + 1); }

inline Rational pow2(int e)
{
  Rational r = 1;
  for (int i = 0; i < e; ++i)
    r *= 2;
  for (int i = 0; i > e; --i)
    r /= 2;
  return r;
}

} // namespace rgi
