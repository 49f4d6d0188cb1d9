#include <doctest.h>

#include <cmath>
#include <random>

#include "core/expansion.hpp"
#include "core/melnikov.hpp"
#include "support.hpp"

using namespace mel;
using testsupport::spec_with;

namespace {

Rational cf_coeff(const PerturbationSpec& s, char which, int i, int j) {
  switch (which) {
    case 'a': return s.get(s.a_plus, i, j);
    case 'b': return s.get(s.b_plus, i, j);
    case 'c': return s.get(s.a_minus, i, j);
    default: return s.get(s.b_minus, i, j);
  }
}

// The degree-2 coefficient tables as exact linear forms in the twelve spec
// coefficients.  The b-_{11} entries carry the sign forced by the left-arc
// line integral (the general moment formula), which the oracle sweep pins.
SymScalar table_c0(const PerturbationSpec& s) {
  return SymScalar(Rational(2) * (cf_coeff(s, 'c', 0, 0) - cf_coeff(s, 'a', 0, 0)));
}
SymScalar table_c1(const PerturbationSpec& s) {
  return SymScalar::pi(Rational(-1, 2) * (cf_coeff(s, 'c', 1, 0) + cf_coeff(s, 'd', 0, 1)));
}
SymScalar table_c2(const PerturbationSpec& s) {
  Rational inner = cf_coeff(s, 'a', 0, 2) + cf_coeff(s, 'b', 0, 1) + cf_coeff(s, 'a', 1, 0) -
                   Rational(2) * cf_coeff(s, 'c', 2, 0) - cf_coeff(s, 'd', 1, 1) -
                   cf_coeff(s, 'c', 0, 2);
  return SymScalar(Rational(-2, 3) * inner);
}
SymScalar table_c3(const PerturbationSpec& s) {
  Rational inner = Rational(2) * cf_coeff(s, 'a', 2, 0) + cf_coeff(s, 'a', 1, 0) +
                   cf_coeff(s, 'b', 1, 1) + cf_coeff(s, 'b', 0, 1);
  return SymScalar(Rational(-2, 15) * inner);
}

SymScalar table_bstar1(const PerturbationSpec& s) {
  Rational inner = cf_coeff(s, 'a', 1, 0) + cf_coeff(s, 'b', 0, 1) +
                   Rational(2) * cf_coeff(s, 'a', 2, 0) + cf_coeff(s, 'b', 1, 1);
  return SymScalar(Rational(-1, 2) * inner);
}
SymScalar table_b0(const PerturbationSpec& s) {
  Rational q = -cf_coeff(s, 'a', 1, 0) - cf_coeff(s, 'b', 0, 1) -
               Rational(2, 3) * cf_coeff(s, 'a', 2, 0) - Rational(1, 3) * cf_coeff(s, 'b', 1, 1) -
               Rational(2) * cf_coeff(s, 'a', 0, 0) - Rational(2, 3) * cf_coeff(s, 'a', 0, 2) +
               Rational(2) * cf_coeff(s, 'c', 0, 0) + Rational(4, 3) * cf_coeff(s, 'c', 2, 0) +
               Rational(2, 3) * cf_coeff(s, 'd', 1, 1) + Rational(2, 3) * cf_coeff(s, 'c', 0, 2);
  Rational p = Rational(-1, 2) * (cf_coeff(s, 'c', 1, 0) + cf_coeff(s, 'd', 0, 1));
  return SymScalar(q, p, Rational(0));
}
SymScalar table_b1(const PerturbationSpec& s) {
  Rational q = Rational(1, 2) * (cf_coeff(s, 'a', 1, 0) + cf_coeff(s, 'b', 0, 1)) -
               cf_coeff(s, 'a', 2, 0) - Rational(1, 2) * cf_coeff(s, 'b', 1, 1) +
               cf_coeff(s, 'a', 0, 0) + cf_coeff(s, 'a', 0, 2) - cf_coeff(s, 'c', 0, 0) -
               Rational(2) * cf_coeff(s, 'c', 2, 0) - cf_coeff(s, 'd', 1, 1) -
               cf_coeff(s, 'c', 0, 2);
  Rational p = Rational(1, 2) * (cf_coeff(s, 'c', 1, 0) + cf_coeff(s, 'd', 0, 1));
  Rational l = cf_coeff(s, 'a', 1, 0) + cf_coeff(s, 'b', 0, 1) +
               Rational(2) * cf_coeff(s, 'a', 2, 0) + cf_coeff(s, 'b', 1, 1);
  return SymScalar(q, p, l);
}
SymScalar table_b2(const PerturbationSpec& s) {
  Rational q = Rational(1, 4) * cf_coeff(s, 'a', 2, 0) + Rational(1, 8) * cf_coeff(s, 'b', 1, 1) -
               Rational(1, 4) * cf_coeff(s, 'a', 0, 2) - Rational(1, 8) * cf_coeff(s, 'a', 1, 0) -
               Rational(1, 8) * cf_coeff(s, 'b', 0, 1) + Rational(1, 4) * cf_coeff(s, 'a', 0, 0) -
               Rational(1, 4) * cf_coeff(s, 'c', 0, 0) + Rational(1, 2) * cf_coeff(s, 'c', 2, 0) +
               Rational(1, 4) * cf_coeff(s, 'd', 1, 1) + Rational(1, 4) * cf_coeff(s, 'c', 0, 2);
  return SymScalar(q);
}

PerturbationSpec random_integer_spec(int n, std::mt19937_64& rng) {
  return random_spec(n, rng, 9, 1);
}

}  // namespace

TEST_CASE("phi0 odd Taylor coefficients") {
  std::vector<Rational> vs = phi0_taylor(2);
  CHECK(vs[0] == Rational(1));
  CHECK(vs[1] == Rational(1, 6));
  CHECK(vs[2] == Rational(-1, 40));
}

TEST_CASE("hopf: phi3 ladder appears in the pure-I10 spec") {
  // b+_{01} = 1 gives f = [-2], g = [2]; the hopf coefficients of the tail
  // are 2 * [u^m] phi3(u) = -2/(4m^2-1).
  ClosedForm cf = closed_form(spec_with(1, {{'b', 0, 1, Rational(1)}}));
  HopfExpansion he = expand_hopf(cf, 5);
  CHECK(he.c[0] == SymScalar(0));  // -2 + 2 phi3(0)
  CHECK(he.c[1] == SymScalar(0));
  for (int j = 1; j <= 5; ++j) {
    // flat index n + j carries (1-h)^{floor(n/2)+j} = (1-h)^j for n = 1
    CHECK(he.c[1 + j] == SymScalar(Rational(-2, 4 * j * j - 1)));
  }
}

TEST_CASE("hopf expansion: spec examples at n=2") {
  {
    HopfExpansion he = expand_hopf(closed_form(spec_with(2, {{'c', 0, 0, Rational(1)}})), 4);
    CHECK(he.c[0] == SymScalar(2));
  }
  {
    HopfExpansion he = expand_hopf(closed_form(spec_with(2, {{'c', 1, 0, Rational(1)}})), 4);
    CHECK(he.c[1] == SymScalar::pi(Rational(-1, 2)));
  }
  {
    HopfExpansion he = expand_hopf(closed_form(spec_with(2, {{'b', 1, 1, Rational(1)}})), 4);
    CHECK(he.c[3] == SymScalar(Rational(-2, 15)));
  }
}

TEST_CASE("hopf expansion reproduces the corrected degree-2 table exactly") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    PerturbationSpec s = random_integer_spec(2, rng);
    HopfExpansion he = expand_hopf(closed_form(s), 4);
    CHECK(he.c[0] == table_c0(s));
    CHECK(he.c[1] == table_c1(s));
    CHECK(he.c[2] == table_c2(s));
    CHECK(he.c[3] == table_c3(s));
  }
}

TEST_CASE("hopf exponent pattern: half-integer ladder then integer tail") {
  HopfExpansion he2 = expand_hopf(closed_form(spec_with(2, {{'a', 0, 0, Rational(1)}})), 3);
  CHECK(he2.exponent(0) == Rational(0));
  CHECK(he2.exponent(1) == Rational(1, 2));
  CHECK(he2.exponent(2) == Rational(1));
  CHECK(he2.exponent(3) == Rational(2));  // floor(2/2) + 1
  CHECK(he2.exponent(4) == Rational(3));
  HopfExpansion he3 = expand_hopf(closed_form(spec_with(3, {{'a', 0, 0, Rational(1)}})), 2);
  CHECK(he3.exponent(3) == Rational(3, 2));
  CHECK(he3.exponent(4) == Rational(2));  // floor(3/2) + 1
  CHECK(he3.exponent(5) == Rational(3));
}

TEST_CASE("homoclinic expansion: spec examples at n=2") {
  PerturbationSpec s = spec_with(2, {{'a', 1, 0, Rational(1)}});
  HomoclinicExpansion hx = expand_homoclinic(closed_form(s), 4);
  CHECK(hx.bstar[0] == SymScalar(Rational(-1, 2)));
  CHECK(hx.b[1] == SymScalar(Rational(1, 2), Rational(0), Rational(1)));  // 1/2 + ln 2

  PerturbationSpec zero;
  zero.n = 2;
  HomoclinicExpansion hz = expand_homoclinic(closed_form(zero), 4);
  for (const auto& v : hz.bstar) CHECK(v.is_zero());
  for (const auto& v : hz.b) CHECK(v.is_zero());
}

TEST_CASE("homoclinic expansion reproduces the corrected degree-2 table exactly") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    PerturbationSpec s = random_integer_spec(2, rng);
    HomoclinicExpansion hx = expand_homoclinic(closed_form(s), 4);
    CHECK(hx.bstar[0] == table_bstar1(s));
    CHECK(hx.b[0] == table_b0(s));
    CHECK(hx.b[1] == table_b1(s));
    CHECK(hx.b[2] == table_b2(s));
  }
}

TEST_CASE("log polynomial: length floor((n+1)/2), determined by g alone") {
  std::mt19937_64 rng(53);
  for (int n = 1; n <= 5; ++n) {
    PerturbationSpec s = random_spec(n, rng);
    ClosedForm cf = closed_form(s);
    HomoclinicExpansion hx = expand_homoclinic(cf, 3);
    CHECK(static_cast<int>(hx.bstar.size()) == (n + 1) / 2);
    // bstar must be exactly the coefficients of -h g(1-h)/4
    Poly expected = cf.g.w_to_h().shifted(1) * SymScalar(Rational(-1, 4));
    for (int i = 1; i <= (n + 1) / 2; ++i) CHECK(hx.bstar[i - 1] == expected.coeff(i));
    // same g with a different f leaves bstar unchanged
    PerturbationSpec s2 = s;
    s2.a_minus[{0, 0}] += Rational(3);
    HomoclinicExpansion hx2 = expand_homoclinic(closed_form(s2), 3);
    for (std::size_t i = 0; i < hx.bstar.size(); ++i) CHECK(hx.bstar[i] == hx2.bstar[i]);
  }
}

TEST_CASE("homoclinic truncation error shrinks at the h^{J+1} ln h rate") {
  std::mt19937_64 rng(59);
  PerturbationSpec s = random_spec(3, rng, 50, 1);
  ClosedForm cf = closed_form(s);
  HomoclinicExpansion hx = expand_homoclinic(cf, 6);
  auto residual = [&](double h) {
    double lam = std::sqrt(1.0 - h);
    return std::abs(mstar_eval(cf, lam) - hx.eval(h));
  };
  auto rate = [](double h) { return std::pow(h, 7.0) * (1.0 + std::abs(std::log(h))); };
  // Fit the constant where the residual is far above rounding noise, then
  // check the predicted decay within a factor 3; the smallest level only gets
  // an upper bound because the true residual approaches double noise there.
  double c_fit = residual(0.08) / rate(0.08);
  REQUIRE(residual(0.08) > 1e-11);
  CHECK(residual(0.04) <= 3.0 * c_fit * rate(0.04) + 1e-13);
  CHECK(residual(0.04) >= c_fit * rate(0.04) / 3.0 - 1e-13);
  CHECK(residual(0.02) <= 3.0 * c_fit * rate(0.02) + 1e-13);
}

TEST_CASE("hopf truncation error shrinks at the (1-h)^{floor(n/2)+J+1} rate") {
  std::mt19937_64 rng(61);
  PerturbationSpec s = random_spec(3, rng, 50, 1);
  ClosedForm cf = closed_form(s);
  HopfExpansion he = expand_hopf(cf, 6);
  // residual order in u = 1-h: floor(n/2) + J + 1 = 8
  auto residual = [&](double u) {
    return std::abs(mstar_eval(cf, std::sqrt(u)) - he.eval(1.0 - u));
  };
  auto rate = [](double u) { return std::pow(u, 8.0); };
  double c_fit = residual(0.2) / rate(0.2);
  REQUIRE(residual(0.2) > 1e-11);
  CHECK(residual(0.1) <= 3.0 * c_fit * rate(0.1) + 1e-13);
  CHECK(residual(0.1) >= c_fit * rate(0.1) / 3.0 - 1e-13);
  CHECK(residual(0.05) <= 3.0 * c_fit * rate(0.05) + 1e-13);
}
