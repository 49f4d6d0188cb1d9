#include "core/symscalar.hpp"

#include <cmath>

#include "core/error.hpp"

namespace mel {

SymScalar& SymScalar::operator+=(const SymScalar& o) {
  q_ += o.q_;
  pi_ += o.pi_;
  ln2_ += o.ln2_;
  return *this;
}

SymScalar& SymScalar::operator-=(const SymScalar& o) {
  q_ -= o.q_;
  pi_ -= o.pi_;
  ln2_ -= o.ln2_;
  return *this;
}

SymScalar& SymScalar::operator*=(const SymScalar& o) {
  if (is_rational()) {
    Rational c = q_;
    q_ = c * o.q_;
    pi_ = c * o.pi_;
    ln2_ = c * o.ln2_;
    return *this;
  }
  if (o.is_rational()) {
    q_ *= o.q_;
    pi_ *= o.q_;
    ln2_ *= o.q_;
    return *this;
  }
  throw RingError("product of two scalars with transcendental parts: " + to_string() + " * " +
                  o.to_string());
}

SymScalar SymScalar::operator/(const Rational& r) const {
  if (r.is_zero()) throw RingError("scalar division by zero");
  return SymScalar(q_ / r, pi_ / r, ln2_ / r);
}

double SymScalar::approx() const {
  constexpr double kPi = 3.14159265358979323846264338327950288;
  constexpr double kLn2 = 0.693147180559945309417232121458176568;
  return q_.to_double() + pi_.to_double() * kPi + ln2_.to_double() * kLn2;
}

long double SymScalar::approx_ld() const {
  constexpr long double kPi = 3.14159265358979323846264338327950288L;
  constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
  return q_.to_long_double() + pi_.to_long_double() * kPi + ln2_.to_long_double() * kLn2;
}

std::string SymScalar::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  auto append = [&s](const Rational& c, const char* base) {
    if (c.is_zero()) return;
    std::string term;
    Rational a = c.abs();
    if (base[0] == '\0') {
      term = a.to_string();
    } else if (a == Rational(1)) {
      term = base;
    } else {
      term = a.to_string() + "*" + base;
    }
    if (s.empty()) {
      s = (c.sign() < 0 ? "-" : "") + term;
    } else {
      s += (c.sign() < 0 ? " - " : " + ") + term;
    }
  };
  append(q_, "");
  append(pi_, "pi");
  append(ln2_, "ln2");
  return s;
}

}  // namespace mel
