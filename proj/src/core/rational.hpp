#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mel {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number with arbitrary-precision numerator and denominator.
// Invariants: gcd(|num|, den) = 1, den > 0, zero is 0/1.  The backing
// cpp_rational maintains exactly this canonical form.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(std::int64_t n) : v_(n) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);
  Rational(BigInt num, BigInt den);

  static Rational parse(const std::string& text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return v_ < 0 ? -*this : *this; }

  double to_double() const { return v_.convert_to<double>(); }
  long double to_long_double() const { return v_.convert_to<long double>(); }

  // "p/q", or just "p" when the denominator is 1.
  std::string to_string() const;

  // C(p, k) for rational p: p(p-1)...(p-k+1)/k!.  Used for the binomial
  // series of (1+x)^p with half-integer exponents.
  static Rational binomial(const Rational& p, unsigned k);

  // Integer helpers for the coefficient formulas.
  static BigInt factorial(unsigned n);
  static BigInt double_factorial(int n);  // n!!, with (-1)!! = 0!! = 1
  static BigInt binomial_int(unsigned n, unsigned k);

 private:
  boost::multiprecision::cpp_rational v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace mel
