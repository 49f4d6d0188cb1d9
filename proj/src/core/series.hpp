#pragma once

#include <vector>

#include "core/poly.hpp"
#include "core/rational.hpp"
#include "core/symscalar.hpp"

namespace mel {

// Truncated formal power series over SymScalar: coefficients of x^0..x^order.
// All operations truncate at the common order; mixing orders takes the
// smaller one.  Used for the expansions at h = 0 and 1 - h = 0.
class Series {
 public:
  explicit Series(int order) : c_(order + 1) {}
  Series(int order, std::vector<SymScalar> coeffs);

  static Series from_poly(const Poly& p, int order);
  // (1-x)^p for rational p, coefficients C(p,k)(-1)^k.
  static Series one_minus_pow(const Rational& p, int order);
  // ln(1 - u(x)) for a series u with zero constant term.
  static Series log_one_minus(const Series& u);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const SymScalar& coeff(int i) const;
  void set_coeff(int i, SymScalar v);

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  Series operator*(const SymScalar& s) const;

  // Multiply by x^k (drops the top k coefficients).
  Series shifted(int k) const;

  double eval(double x) const;

 private:
  std::vector<SymScalar> c_;
};

}  // namespace mel
