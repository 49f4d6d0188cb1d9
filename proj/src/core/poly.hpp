#pragma once

#include <string>
#include <vector>

#include "core/symscalar.hpp"

namespace mel {

// Variable tag for univariate polynomials.  h is the orbit level in (0,1),
// lambda = sqrt(1-h), w = 1-h = lambda^2.  Tagging prevents silently adding a
// polynomial in h to one in lambda; conversions are explicit substitutions.
enum class Var { h, lambda, w };

const char* var_name(Var v);

// Dense univariate polynomial over SymScalar.  Trailing zero coefficients are
// trimmed; the zero polynomial has degree() == kZeroDegree (the "-infinity"
// sentinel).
class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  explicit Poly(Var var) : var_(var) {}
  Poly(Var var, std::vector<SymScalar> coeffs);

  static Poly zero(Var var) { return Poly(var); }
  static Poly constant(Var var, SymScalar c);
  static Poly monomial(Var var, SymScalar c, int power);

  Var var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  // Coefficient of x^i; zero beyond the stored degree.
  const SymScalar& coeff(int i) const;
  void set_coeff(int i, SymScalar v);

  const std::vector<SymScalar>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const SymScalar& s) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.var_ == b.var_ && a.c_ == b.c_; }

  // Horner evaluation at a value of this polynomial's variable.
  double eval(double x) const;
  long double eval_ld(long double x) const;

  // Formal derivative in this polynomial's variable.
  Poly derivative() const;

  // Multiply by x^k.
  Poly shifted(int k) const;

  // p(w) with w = lambda^2 -> polynomial in lambda.
  Poly w_to_lambda() const;
  // p(h) with h = 1-w -> polynomial in w (exact binomial expansion).
  Poly h_to_w() const;
  // p(w) with w = 1-h -> polynomial in h.
  Poly w_to_h() const;

  // Coefficients projected to double, index = power.
  std::vector<double> coeffs_approx() const;

  std::string to_string() const;

 private:
  void trim();

  Var var_;
  std::vector<SymScalar> c_;
};

// (1 - x)^k as an exact polynomial in the given variable.
Poly one_minus_pow_poly(Var var, int k);

}  // namespace mel
