#pragma once

#include <string>

#include "core/rational.hpp"

namespace mel {

// Element of the coefficient ring Q + Q*pi + Q*ln2, the three constants that
// appear in the closed-form Melnikov coefficients.  pi and ln 2 are treated
// as independent over Q, so equality is component-wise.  Multiplication is
// only defined when at least one factor is purely rational; nothing in the
// pipeline ever multiplies two transcendental parts, and attempting to is an
// error rather than a silent basis extension.
class SymScalar {
 public:
  SymScalar() = default;
  SymScalar(Rational rat) : q_(std::move(rat)) {}  // NOLINT: implicit by design
  SymScalar(std::int64_t n) : q_(n) {}             // NOLINT
  SymScalar(Rational rat, Rational pi_coeff, Rational ln2_coeff)
      : q_(std::move(rat)), pi_(std::move(pi_coeff)), ln2_(std::move(ln2_coeff)) {}

  static SymScalar pi(Rational coeff = Rational(1)) { return SymScalar(0, std::move(coeff), 0); }
  static SymScalar ln2(Rational coeff = Rational(1)) { return SymScalar(0, 0, std::move(coeff)); }

  const Rational& rat() const { return q_; }
  const Rational& pi_coeff() const { return pi_; }
  const Rational& ln2_coeff() const { return ln2_; }

  bool is_zero() const { return q_.is_zero() && pi_.is_zero() && ln2_.is_zero(); }
  bool is_rational() const { return pi_.is_zero() && ln2_.is_zero(); }

  SymScalar operator-() const { return SymScalar(-q_, -pi_, -ln2_); }
  SymScalar& operator+=(const SymScalar& o);
  SymScalar& operator-=(const SymScalar& o);
  SymScalar& operator*=(const SymScalar& o);

  friend SymScalar operator+(SymScalar a, const SymScalar& b) { return a += b; }
  friend SymScalar operator-(SymScalar a, const SymScalar& b) { return a -= b; }
  friend SymScalar operator*(SymScalar a, const SymScalar& b) { return a *= b; }

  friend bool operator==(const SymScalar& a, const SymScalar& b) {
    return a.q_ == b.q_ && a.pi_ == b.pi_ && a.ln2_ == b.ln2_;
  }
  friend bool operator!=(const SymScalar& a, const SymScalar& b) { return !(a == b); }

  // Division by a purely rational scalar.
  SymScalar operator/(const Rational& r) const;

  double approx() const;
  long double approx_ld() const;

  // Human-readable form, e.g. "1/2 + 3/4*pi - ln2".
  std::string to_string() const;

 private:
  Rational q_, pi_, ln2_;
};

}  // namespace mel
