#pragma once

#include <string>
#include <vector>

#include "core/melnikov.hpp"
#include "core/poly.hpp"

namespace mel {

struct ZeroHit {
  double h = 0.0;
  double lambda = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // in lambda
  double residual = 0.0;
};

struct ScanInfo {
  int grid_points = 0;
  double h_min = 0.0, h_max = 0.0;
  double tol = 0.0;
};

struct ZeroReport {
  std::vector<ZeroHit> zeros;  // sorted by h ascending
  int count = 0;
  std::vector<double> suspected_multiple;  // h values of near-tangencies
  ScanInfo scan;

  std::string to_json() const;
};

// Count and isolate the simple zeros of Mbar on (h_min, h_max).  The scan
// runs in the lambda = sqrt(1-h) chart where M* is smooth: a uniform lambda
// grid plus geometric endpoint refinement (ratio 1/2, down to geo_floor from
// either end), sign changes refined by bisection to bracket width <= tol.
// Near-zero local minima without a sign change are reported as suspected
// multiples, never counted.  Throws NumericError if more than one zero lands
// in a single grid cell.
ZeroReport count_zeros(const ClosedForm& cf, double h_min, double h_max, int grid, double tol);

// Same scan with explicit lambda bounds; used internally where the zeros sit
// closer to an endpoint than double precision in h can express.
ZeroReport count_zeros_lambda(const ClosedForm& cf, double lambda_min, double lambda_max, int grid,
                              double tol, double geo_floor = 1e-6);

// The numerator of d/dlambda(M*/u): with u0 = g(lambda^2) and
// u = (1-lambda^2) u0,
//   theta(lambda) = (lambda f)' u - (lambda f) u' + u0^2,
// a polynomial of degree <= 2n whose real roots in (0,1), together with those
// of u, bound the zeros of Mbar.
Poly theta_poly(const ClosedForm& cf);

struct BoundCertificate {
  int n = 1;
  bool g_is_zero = false;
  Poly u{Var::lambda}, u0{Var::lambda}, theta{Var::lambda};
  int zeros_u_in_unit = 0;
  int zeros_theta_in_unit = 0;
  int bound = 0;

  std::string to_json() const;
};

// Instance-wise upper bound on the number of zeros of Mbar in (0,1):
// bound = #roots(u) + #roots(theta) + 1 when g != 0, and the root count of f
// alone when g == 0.  Root counting by Sturm sequences on float-projected
// coefficients, with the exact rational path as fallback on degeneracy.
BoundCertificate upper_bound_certificate(const ClosedForm& cf);

struct ZmaxBounds {
  int lower = 0, upper = 0;
};

// Proven bounds for Z(n): lower = n + floor((n+1)/2) for all n; equal upper
// for n <= 4; upper = 2n + floor((n+1)/2) from n = 5 on.
ZmaxBounds zmax_table(int n);

}  // namespace mel
