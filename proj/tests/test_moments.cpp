#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/melnikov.hpp"
#include "core/quadrature.hpp"

using namespace mel;

namespace {

// Independent oracle: the defining integral of I_{rk}.
double moment_quadrature(int r, int k, double h) {
  auto f = [r, k, h](double y) {
    return std::pow(h + y * y, 0.5 * r) * std::pow(y, 2 * k);
  };
  return integrate(f, 0.0, std::sqrt(1.0 - h), 1e-13).value;
}

}  // namespace

TEST_CASE("phi0: closed form against quadrature, odd symmetry") {
  CHECK(phi0_eval(0.0) == 0.0);
  double q = integrate([](double x) { return std::sqrt(1.0 + x * x); }, 0.0, 1.0, 1e-14).value;
  CHECK(phi0_eval(1.0) == doctest::Approx(q).epsilon(1e-14));
  for (double u : {0.3, 1.0, 2.5}) CHECK(phi0_eval(-u) == doctest::Approx(-phi0_eval(u)).epsilon(1e-15));
}

TEST_CASE("i10: endpoint, quadrature value, domain errors") {
  CHECK(i10_eval(1.0) == 0.0);
  CHECK(i10_eval(0.5) == doctest::Approx(moment_quadrature(1, 0, 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(i10_eval(0.0), DomainError);
  CHECK_THROWS_AS(i10_eval(-0.1), DomainError);
  CHECK_THROWS_AS(i10_eval(1.5), DomainError);
}

TEST_CASE("i10 identity with phi0: I10(h) = h phi0(sqrt((1-h)/h))") {
  for (double h = 0.01; h < 0.995; h += 0.014) {
    double lhs = i10_eval(h);
    double rhs = h * phi0_eval(std::sqrt((1.0 - h) / h));
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
  }
}

TEST_CASE("moment base cases") {
  MomentDecomposition m10 = moment(1, 0);
  CHECK(m10.sqrt_part.is_zero());
  CHECK(m10.i10_coeff == Rational(1));
  CHECK(m10.i10_power == 0);

  // I_{20} = sqrt(1-h) (h + (1-h)/3): coefficients 1/3 + (2/3) h
  MomentDecomposition m20 = moment(2, 0);
  CHECK(m20.i10_coeff.is_zero());
  CHECK(m20.sqrt_part == Poly(Var::h, {SymScalar(Rational(1, 3)), SymScalar(Rational(2, 3))}));

  // I_{30} = sqrt(1-h)/4 + (3/4) h I10
  MomentDecomposition m30 = moment(3, 0);
  CHECK(m30.sqrt_part == Poly::constant(Var::h, SymScalar(Rational(1, 4))));
  CHECK(m30.i10_coeff == Rational(3, 4));
  CHECK(m30.i10_power == 1);
}

TEST_CASE("moment structure: parity, degrees, nonzero log coefficient") {
  for (int r = 0; r <= 9; ++r)
    for (int k = 0; k <= 4; ++k) {
      MomentDecomposition m = moment(r, k);
      if (r % 2 == 0) {
        CHECK(m.i10_coeff.is_zero());
        CHECK(m.sqrt_part.degree() == r / 2 + k);
      } else {
        CHECK(!m.i10_coeff.is_zero());
        CHECK(m.i10_power == (r - 1) / 2 + k);
      }
    }
}

TEST_CASE("moments match quadrature for r+2k within range") {
  for (int r = 0; r <= 7; ++r)
    for (int k = 0; k <= 3; ++k)
      for (double h : {0.1, 0.45, 0.85}) {
        double exact = moment(r, k).eval(h);
        double quad = moment_quadrature(r, k, h);
        CHECK(std::abs(exact - quad) <= 1e-12 * (1.0 + std::abs(quad)));
      }
}

TEST_CASE("odd-moment recurrence holds numerically") {
  // I_{2l+1,k} = (1-h)^{k+1/2}/(2(l+k+1)) + (2l+1)h/(2(l+k+1)) I_{2l-1,k}
  for (int l = 1; l + 0 <= 5; ++l)
    for (int k = 0; l + k <= 5; ++k)
      for (double h : {0.2, 0.5, 0.8}) {
        double lhs = moment(2 * l + 1, k).eval(h);
        double rhs = std::pow(1.0 - h, k + 0.5) / (2.0 * (l + k + 1)) +
                     (2.0 * l + 1) * h / (2.0 * (l + k + 1)) * moment(2 * l - 1, k).eval(h);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
      }
}

TEST_CASE("I_{1k} log coefficient reproduces beta_k = (-1)^k (2k-1)!!/(2^k (k+1)!)") {
  for (int k = 0; k <= 4; ++k) {
    Rational expected =
        k == 0 ? Rational(1)
               : Rational(Rational::double_factorial(2 * k - 1),
                          (BigInt(1) << k) * Rational::factorial(k + 1));
    if (k % 2 == 1) expected = -expected;
    CHECK(moment(1, k).i10_coeff == expected);
    // and the whole decomposition integrates correctly
    CHECK(std::abs(moment(1, k).eval(0.37) - moment_quadrature(1, k, 0.37)) <= 1e-13);
  }
}
