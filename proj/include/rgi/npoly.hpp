#pragma once

#include "rational.hpp"

#include <string>
#include <vector>

namespace rgi {

// Polynomial in N with exact rational coefficients, index = power of N.
class NPoly
{
public:
  NPoly() = default;
  NPoly(const Rational &c) : c_{c} { trim(); }
  NPoly(int c) : NPoly(Rational(c)) {}
  explicit NPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static NPoly monomial(const Rational &c, int power)
  {
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return NPoly(std::move(v));
  }

  const std::vector<Rational> &coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  Rational coeff(int p) const
  {
    return p >= 0 && p < static_cast<int>(c_.size()) ? c_[p] : Rational(0);
  }

  Rational operator()(const Rational &n) const
  {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      r = r * n + *it;
    return r;
  }

  NPoly &operator+=(const NPoly &o)
  {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] += o.c_[i];
    trim();
    return *this;
  }

  NPoly &operator-=(const NPoly &o)
  {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  NPoly &operator*=(const Rational &s)
  {
    for (auto &x : c_)
      x *= s;
    trim();
    return *this;
  }

  NPoly &operator*=(const NPoly &o)
  {
    if (is_zero() || o.is_zero()) {
      c_.clear();
      return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] += c_[i] * o.c_[j];
    c_ = std::move(r);
    trim();
    return *this;
  }

  // multiply by N^k
  NPoly shifted(int k) const
  {
    if (is_zero())
      return {};
    std::vector<Rational> r(k, Rational(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return NPoly(std::move(r));
  }

  friend NPoly operator+(NPoly a, const NPoly &b) { return a += b; }
  friend NPoly operator-(NPoly a, const NPoly &b) { return a -= b; }
  friend NPoly operator*(NPoly a, const NPoly &b) { return a *= b; }
  friend NPoly operator*(NPoly a, const Rational &s) { return a *= s; }
  friend NPoly operator*(const Rational &s, NPoly a) { return a *= s; }
  friend NPoly operator-(NPoly a) { return a *= Rational(-1); }
  friend bool operator==(const NPoly &a, const NPoly &b) { return a.c_ == b.c_; }
  friend bool operator!=(const NPoly &a, const NPoly &b) { return !(a == b); }

  // "c0 + c1*N + c2*N^2"
  std::string render() const
  {
    if (c_.empty())
      return "0/1";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i)
        s += " + ";
      s += to_string(c_[i]);
      if (i == 1)
        s += "*N";
      else if (i > 1)
        s += "*N^" + std::to_string(i);
    }
    return s;
  }

  std::vector<std::string> to_strings() const
  {
    std::vector<std::string> v;
    if (c_.empty())
      v.push_back("0/1");
    for (auto &x : c_)
      v.push_back(to_string(x));
    return v;
  }

  static NPoly from_strings(const std::vector<std::string> &v)
  {
    std::vector<Rational> c;
    for (auto &s : v)
      c.push_back(parse_rational(s));
    return NPoly(std::move(c));
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  std::vector<Rational> c_;
};

enum class Parity { Even, Odd, Mixed, Zero };

inline const char *parity_name(Parity p)
{
  switch (p) {
  case Parity::Even: return "even";
  case Parity::Odd: return "odd";
  case Parity::Mixed: return "mixed";
  default: return "zero";
  }
}

inline Parity npoly_parity(const NPoly &p)
{
  bool even = false, odd = false;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i) == 0)
      continue;
    (i % 2 ? odd : even) = true;
  }
  if (even && odd)
    return Parity::Mixed;
  if (even)
    return Parity::Even;
  if (odd)
    return Parity::Odd;
  return Parity::Zero;
}

} // namespace rgi
