#pragma once

#include <string>
#include <vector>

#include "core/melnikov.hpp"
#include "core/rational.hpp"
#include "core/symscalar.hpp"

namespace mel {

// Odd Taylor coefficients of phi0(u) = int_0^u sqrt(1+x^2) dx:
//   phi0(u) = sum_i varsigma_i u^{2i+1},  varsigma_i = C(1/2,i)/(2i+1).
// Returns varsigma_0..varsigma_m.
std::vector<Rational> phi0_taylor(int m);

// Expansion of Mbar near the homoclinic loop (h -> 0+):
//   Mbar(h) = (sum_{i=1}^{floor((n+1)/2)} bstar_i h^i) ln h + sum_{j>=0} b_j h^j + o(h^J).
// The log polynomial is exactly -h g(1-h)/4, so it vanishes at h = 0 and
// depends on g alone; the b_j pick up ln 2 through ln(1+sqrt(1-h)).
struct HomoclinicExpansion {
  int n = 1;
  int order = 6;                 // J
  std::vector<SymScalar> bstar;  // bstar[i] = b*_{i+1}, length floor((n+1)/2)
  std::vector<SymScalar> b;      // b[j] = b_j, j = 0..J

  double eval(double h) const;   // truncated expansion value
  std::string to_json() const;
};

HomoclinicExpansion expand_homoclinic(const ClosedForm& cf, int order = 6);

// Expansion of Mbar near the origin (h -> 1-), in powers of 1-h:
//   Mbar(h) = sqrt(1-h) [ sum_{i=0}^n c_i (1-h)^{i/2}
//                       + sum_{j=1}^J c_{n+j} (1-h)^{floor(n/2)+j} ].
// Stored flat as c_0..c_{n+J}; exponent(i) gives the power of (1-h) that c_i
// multiplies inside the bracket.
struct HopfExpansion {
  int n = 1;
  int order = 6;            // J
  std::vector<SymScalar> c; // length n+J+1

  Rational exponent(int i) const;
  double eval(double h) const;
  std::string to_json() const;
};

HopfExpansion expand_hopf(const ClosedForm& cf, int order = 6);

}  // namespace mel
