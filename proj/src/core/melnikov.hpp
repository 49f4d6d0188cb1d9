#pragma once

#include "core/model.hpp"
#include "core/poly.hpp"

namespace mel {

// phi0(u) = int_0^u sqrt(1+x^2) dx = (u sqrt(1+u^2) + asinh(u))/2; odd in u.
double phi0_eval(double u);

// I10(h) = int_0^{sqrt(1-h)} sqrt(h+y^2) dy
//        = [sqrt(1-h) + h ln(1+sqrt(1-h)) - h ln(h)/2]/2,   0 < h <= 1.
// Carries the whole logarithmic singularity of the Melnikov function at h=0.
double i10_eval(double h);

// Exact decomposition of the moment
//   I_{rk}(h) = int_0^{sqrt(1-h)} (h+y^2)^{r/2} y^{2k} dy
//             = sqrt(1-h) * sqrt_part(h) + i10_coeff * h^i10_power * I10(h).
// Even r: binomial expansion, no I10 term, deg sqrt_part = r/2 + k.
// Odd r:  built from the integration-by-parts recurrences with base I10;
//         i10_coeff is nonzero and i10_power = (r-1)/2 + k.
struct MomentDecomposition {
  int r = 0, k = 0;
  Poly sqrt_part{Var::h};
  Rational i10_coeff;
  int i10_power = 0;

  double eval(double h) const;
};

MomentDecomposition moment(int r, int k);

// Closed form of the first-order Melnikov function,
//   Mbar(h) = sqrt(1-h) * f(sqrt(1-h)) + g(1-h) * I10(h),
// with deg f <= n and deg g <= floor((n-1)/2), coefficients exact.
// f's even-index coefficients and all of g are rational; f's odd-index
// coefficients are pure pi-multiples (they come from the left-half moments).
struct ClosedForm {
  int n = 1;
  Poly f{Var::lambda};
  Poly g{Var::w};

  std::string to_json() const;
};

ClosedForm closed_form(const PerturbationSpec& spec);

// Mbar(h) for h in (0,1).
double eval_melnikov(const ClosedForm& cf, double h);

// Same function in the lambda = sqrt(1-h) chart, smooth on (0,1):
//   M*(lambda) = lambda f(lambda) + g(lambda^2) I10((1-lambda)(1+lambda)).
double mstar_eval(const ClosedForm& cf, double lambda);

// Independent oracle: the defining line integrals
//   Mbar(h) = int_{A->A1, right arc} q+ dx - p+ dy + int_{A1->A, left arc} q- dx - p- dy
// by adaptive quadrature (right arc parametrized by y with x = 1-sqrt(h+y^2),
// left arc by angle).  Never touches the closed-form pipeline.
double quadrature_oracle(const PerturbationSpec& spec, double h, double abs_tol = 1e-12);

// Dense double-projected bivariate polynomial, for fast evaluation in the
// oracle and the simulator.
struct DensePoly2 {
  int n = 0;
  std::vector<double> c;  // (n+1) x (n+1), row-major [i*(n+1)+j] for x^i y^j

  static DensePoly2 from(const CoeffMap& m, int n);
  double eval(double x, double y) const;
};

}  // namespace mel
