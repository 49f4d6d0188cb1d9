#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/poly.hpp"
#include "core/rational.hpp"
#include "core/symscalar.hpp"

namespace mel {

using IndexPair = std::pair<int, int>;
using CoeffMap = std::map<IndexPair, Rational>;

// Coefficients of the degree-n polynomial perturbation
//   p^+(x,y) = sum a_plus[{i,j}] x^i y^j   (x >= 0), similarly q^+ = b_plus,
//   p^-, q^- = a_minus, b_minus            (x < 0),
// all indices with 0 <= i+j <= n.  Maps are sparse: absent keys are zero.
struct PerturbationSpec {
  int n = 1;
  CoeffMap a_plus, b_plus, a_minus, b_minus;

  void validate() const;  // throws ParseError on out-of-range keys

  Rational get(const CoeffMap& m, int i, int j) const;

  // sum of |coefficients| as a cheap all-zero test
  bool is_zero() const;

  static PerturbationSpec from_json(const std::string& text);
  std::string to_json() const;

  // Linear combination alpha*a + beta*b (degrees must match).
  static PerturbationSpec linear(const Rational& alpha, const PerturbationSpec& a,
                                 const Rational& beta, const PerturbationSpec& b);
};

// The fixed unperturbed geometry:
//   H+(x,y) = ((x-1)^2 - y^2)/2 on x >= 0,  H-(x,y) = -(x^2+y^2)/2 on x < 0.
// The periodic orbit L_h lives on H+ = h/2 (right) and H- = (h-1)/2 (left),
// h in (0,1); it crosses the y-axis at A = (0,-sqrt(1-h)), A1 = (0,+sqrt(1-h)).
// The loop shrinks to the origin as h -> 1 and limits onto the homoclinic
// loop through the saddle (1,0) as h -> 0.  Orbits run anticlockwise.
struct UnperturbedGeometry {
  static double right_hamiltonian(double x, double y) { return 0.5 * ((x - 1) * (x - 1) - y * y); }
  static double left_hamiltonian(double x, double y) { return -0.5 * (x * x + y * y); }
  static constexpr double saddle_x = 1.0, saddle_y = 0.0;
  static double left_level(double h) { return h - 1.0; }
  static double section_a(double h);   // y-coordinate of A(h), negative
  static double section_a1(double h);  // y-coordinate of A1(h), positive
};

// Wallis-type trigonometric moments Gamma_{ij} = int_{-pi/2}^{pi/2} cos^i sin^j,
// computed exactly by the two-index reduction down to Gamma_00 = pi and
// Gamma_10 = 2.  Zero for odd j; for even j the value is rational when i is
// odd and a rational multiple of pi when i is even.
SymScalar wallis(int i, int j);

// Precomputed table of Gamma_{ij} for i+j <= max_total.
struct WallisTable {
  explicit WallisTable(int max_total);
  const SymScalar& gamma(int i, int j) const;
  // Ibar_{ij} = (-1)^{i+j} Gamma_{ij}; derived, never stored.
  SymScalar ibar(int i, int j) const;
  int max_total() const { return max_total_; }

 private:
  int max_total_;
  std::vector<std::vector<SymScalar>> g_;
};

// Reduced right-side coefficients p^+_{ij} = a^+_{i+1,j} + (j+1)/(i+1) b^+_{i,j+1},
// defined for 0 <= i+j <= n-1; the reduced integrand is x * sum p^+_{ij} x^i y^j.
struct ReducedPlus {
  int n = 1;
  CoeffMap p;
  Rational get(int i, int j) const;
};

ReducedPlus reduce_plus(const PerturbationSpec& spec);

// Left-half moments e_0..e_n:
//   e_l = (-1)^{l+1} [ sum_{j even} a^-_{l-j,j} Gamma_{l-j+1,j}
//                    + sum_{j odd}  b^-_{l-j,j} Gamma_{l-j,j+1} ],
// so that M^-(h/2) = -sqrt(1-h) * sum_l e_l (1-h)^{l/2}.  e_l is rational for
// even l and a pure pi-multiple for odd l.
struct LeftMoments {
  std::vector<SymScalar> e;  // length n+1
};

LeftMoments left_moments(const PerturbationSpec& spec, const WallisTable& table);

// Dense random spec with small rational coefficients, deterministic in the
// generator state; the workhorse of the randomized sweeps.
PerturbationSpec random_spec(int n, std::mt19937_64& rng, int max_abs_num = 9, int max_den = 4);

}  // namespace mel
