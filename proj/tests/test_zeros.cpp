#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/sturm.hpp"
#include "core/zeros.hpp"
#include "support.hpp"

using namespace mel;
using testsupport::spec_with;

namespace {

ClosedForm synthetic(int n, Poly f, Poly g) {
  ClosedForm cf;
  cf.n = n;
  cf.f = std::move(f);
  cf.g = std::move(g);
  return cf;
}

}  // namespace

TEST_CASE("count_zeros isolates the roots of a known quadratic") {
  // f = lambda^2 - lambda/10 + 1/1000, g = 0: Mbar = lambda f(lambda)
  Poly f(Var::lambda,
         {SymScalar(Rational(1, 1000)), SymScalar(Rational(-1, 10)), SymScalar(Rational(1))});
  ClosedForm cf = synthetic(2, f, Poly::zero(Var::w));
  ZeroReport rep = count_zeros(cf, 0.9, 0.9999999, 2000, 1e-13);
  REQUIRE(rep.count == 2);
  double disc = std::sqrt(0.01 - 0.004);
  double r1 = (0.1 - disc) / 2, r2 = (0.1 + disc) / 2;  // quadratic formula oracle
  CHECK(rep.zeros[0].lambda == doctest::Approx(r2).epsilon(1e-9));
  CHECK(rep.zeros[1].lambda == doctest::Approx(r1).epsilon(1e-9));
  for (const auto& z : rep.zeros) {
    CHECK(z.bracket_lo <= z.lambda);
    CHECK(z.lambda <= z.bracket_hi);
    CHECK(z.h == doctest::Approx((1 - z.lambda) * (1 + z.lambda)).epsilon(1e-14));
  }
}

TEST_CASE("single-signed Melnikov function has no zeros") {
  ClosedForm cf = closed_form(spec_with(1, {{'a', 0, 0, Rational(1)}}));
  ZeroReport rep = count_zeros(cf, 0.001, 0.999, 512, 1e-12);
  CHECK(rep.count == 0);
  CHECK(rep.suspected_multiple.empty());
}

TEST_CASE("count_zeros rejects bad windows and grids") {
  ClosedForm cf = closed_form(spec_with(1, {{'a', 0, 0, Rational(1)}}));
  CHECK_THROWS_AS(count_zeros(cf, 0.0, 0.9, 512, 1e-12), DomainError);
  CHECK_THROWS_AS(count_zeros(cf, 0.5, 0.4, 512, 1e-12), DomainError);
  CHECK_THROWS_AS(count_zeros(cf, 0.1, 0.9, 50, 1e-12), DomainError);
}

TEST_CASE("near-tangency is flagged as suspected multiple, not counted") {
  // f = (lambda - z0)^2 with z0 just off any grid point
  Rational z0(500001, 1000000);
  Poly f(Var::lambda, {SymScalar(z0 * z0), SymScalar(Rational(-2) * z0), SymScalar(Rational(1))});
  ClosedForm cf = synthetic(2, f, Poly::zero(Var::w));
  ZeroReport rep = count_zeros_lambda(cf, 0.1, 0.9, 4001, 1e-12);
  CHECK(rep.count == 0);
  REQUIRE(!rep.suspected_multiple.empty());
  double h0 = (1 - z0.to_double()) * (1 + z0.to_double());
  CHECK(std::abs(rep.suspected_multiple[0] - h0) < 1e-3);
}

TEST_CASE("lambda scan and direct h scan agree on the count") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    PerturbationSpec s = random_spec(3, rng);
    ClosedForm cf = closed_form(s);
    ZeroReport rep = count_zeros(cf, 0.01, 0.99, 1024, 1e-11);
    // independent count: dense sign scan in h
    int changes = 0;
    double prev = eval_melnikov(cf, 0.01);
    for (int i = 1; i <= 20000; ++i) {
      double h = 0.01 + (0.99 - 0.01) * i / 20000.0;
      double v = eval_melnikov(cf, h);
      if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
      if (v != 0.0) prev = v;
    }
    CHECK(rep.count == changes);
  }
}

TEST_CASE("theta: the worked n=1 certificate") {
  ClosedForm cf = synthetic(1, Poly::constant(Var::lambda, SymScalar(-2)),
                            Poly::constant(Var::w, SymScalar(2)));
  Poly theta = theta_poly(cf);
  CHECK(theta == Poly::monomial(Var::lambda, SymScalar(-4), 2));
  BoundCertificate cert = upper_bound_certificate(cf);
  CHECK(cert.zeros_u_in_unit == 0);
  CHECK(cert.zeros_theta_in_unit == 0);  // the double root at lambda = 0 is outside (0,1)
  CHECK(cert.bound == 1);
}

TEST_CASE("theta vanishes identically when g = 0, and the bound counts f roots") {
  Poly f(Var::lambda,
         {SymScalar(Rational(1, 1000)), SymScalar(Rational(-1, 10)), SymScalar(Rational(1))});
  ClosedForm cf = synthetic(2, f, Poly::zero(Var::w));
  CHECK(theta_poly(cf).is_zero());
  BoundCertificate cert = upper_bound_certificate(cf);
  CHECK(cert.g_is_zero);
  CHECK(cert.bound == 2);
}

TEST_CASE("theta degree cap and exact top cancellation for odd n") {
  std::mt19937_64 rng(71);
  for (int n : {3, 5, 7}) {
    for (int trial = 0; trial < 10; ++trial) {
      ClosedForm cf = closed_form(random_spec(n, rng));
      Poly theta = theta_poly(cf);
      CHECK(theta.degree() <= 2 * n);
      // the three assembly parts cancel exactly at degree n + 2 floor((n+1)/2)
      Poly u0 = cf.g.w_to_lambda();
      Poly u = Poly(Var::lambda, {SymScalar(1), SymScalar(0), SymScalar(-1)}) * u0;
      Poly lf = cf.f.shifted(1);
      int top = n + 2 * ((n + 1) / 2);
      SymScalar part1 = (lf.derivative() * u).coeff(top);
      SymScalar part2 = (lf * u.derivative()).coeff(top);
      SymScalar part3 = (u0 * u0).coeff(top);
      CHECK((part1 - part2 + part3).is_zero());
      if (cf.f.degree() == n && cf.g.degree() == (n - 1) / 2) CHECK(!part1.is_zero());
    }
  }
}

TEST_CASE("sturm counts match dense sampling and the exact path") {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> nroots(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    // Build a polynomial from prescribed rational roots, some inside (0,1).
    int k_in = nroots(rng);
    int k_out = nroots(rng) % 3;
    std::vector<Rational> roots;
    std::vector<Rational> poly{Rational(1)};
    auto mult_by_root = [&poly](const Rational& r) {
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= r * poly[i];
      }
      poly = next;
    };
    std::uniform_int_distribution<int> inside(1, 99);
    std::uniform_int_distribution<int> outside(2, 9);
    bool distinct_ok = true;
    for (int i = 0; i < k_in; ++i) {
      Rational r(inside(rng), 100);
      for (const auto& prev : roots)
        if (prev == r) distinct_ok = false;
      roots.push_back(r);
      mult_by_root(r);
    }
    if (!distinct_ok) continue;
    for (int i = 0; i < k_out; ++i) mult_by_root(Rational(outside(rng)));

    std::vector<double> dpoly(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) dpoly[i] = poly[i].to_double();
    CHECK(sturm_count_open01(dpoly) == k_in);
    CHECK(sturm_count_open01_exact(poly) == k_in);
  }
}

TEST_CASE("sturm excludes endpoint roots (open interval)") {
  // lambda (lambda - 1) (lambda - 1/2): only 1/2 is inside
  std::vector<Rational> p{Rational(0), Rational(1, 2), Rational(-3, 2), Rational(1)};
  CHECK(sturm_count_open01_exact(p) == 1);
  CHECK(sturm_count_open01({0.0, 0.5, -1.5, 1.0}) == 1);
}

TEST_CASE("certificate bound respects the theorem cap and the observed count") {
  std::mt19937_64 rng(79);
  for (int n : {1, 2, 3, 4, 5}) {
    int cap = 2 * n + (n + 1) / 2;
    for (int trial = 0; trial < 40; ++trial) {
      ClosedForm cf = closed_form(random_spec(n, rng));
      BoundCertificate cert = upper_bound_certificate(cf);
      CHECK(cert.bound <= cap);
      ZeroReport rep = count_zeros(cf, 0.001, 0.999, 512, 1e-11);
      CHECK(rep.count <= cert.bound);
      CHECK(rep.count <= zmax_table(n).upper);
    }
  }
}

TEST_CASE("zmax table") {
  CHECK(zmax_table(1).lower == 2);
  CHECK(zmax_table(1).upper == 2);
  CHECK(zmax_table(2).upper == 3);
  CHECK(zmax_table(3).upper == 5);
  CHECK(zmax_table(4).upper == 6);
  CHECK(zmax_table(5).lower == 8);
  CHECK(zmax_table(5).upper == 13);
  CHECK(zmax_table(6).upper == 15);
  CHECK_THROWS_AS(zmax_table(0), DomainError);
}
