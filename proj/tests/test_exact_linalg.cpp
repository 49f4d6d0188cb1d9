#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/ratmat.hpp"
#include "core/ringpoly.hpp"

using namespace mel;

TEST_CASE("ring polynomial arithmetic and exact division") {
  RingPoly pi_term = RingPoly::from(SymScalar::pi());
  RingPoly mixed = RingPoly::from(SymScalar(Rational(1, 2), Rational(3), Rational(-1)));
  // products of transcendental parts are fine here, unlike in SymScalar
  RingPoly sq = pi_term * pi_term;
  CHECK(!sq.is_zero());
  CHECK(sq.divide_exact(pi_term) == pi_term);

  RingPoly prod = mixed * sq;
  CHECK(prod.divide_exact(mixed) == sq);
  CHECK(prod.divide_exact(sq) == mixed);
  CHECK_THROWS_AS(pi_term.divide_exact(sq), RingError);
  CHECK_THROWS_AS(pi_term.divide_exact(RingPoly()), RingError);
  CHECK((prod - prod).is_zero());
}

TEST_CASE("bareiss rank over the rationals") {
  // rank 2: third row is the sum of the first two
  std::vector<std::vector<Rational>> m{
      {Rational(1), Rational(2), Rational(3)},
      {Rational(0), Rational(1), Rational(1, 2)},
      {Rational(1), Rational(3), Rational(7, 2)},
  };
  CHECK(rational_rank(m) == 2);
  m[2][2] = Rational(4);
  CHECK(rational_rank(m) == 3);
  CHECK(rational_rank({{Rational(0), Rational(0)}}) == 0);
}

TEST_CASE("bareiss rank over Q[pi, ln2] sees transcendental independence") {
  auto s = [](int q, int p, int l) {
    return RingPoly::from(SymScalar(Rational(q), Rational(p), Rational(l)));
  };
  // [1, pi; ln2, pi ln2] has proportional rows over the ring? no:
  // (1)(pi ln2) - (pi)(ln2) = 0, so rank 1.
  std::vector<std::vector<RingPoly>> a{{s(1, 0, 0), s(0, 1, 0)}, {s(0, 0, 1), RingPoly()}};
  a[1][1] = s(0, 1, 0) * s(0, 0, 1);  // pi*ln2
  CHECK(bareiss_rank(a) == 1);
  // but [1, pi; pi, 1] has determinant 1 - pi^2 != 0 in the ring
  std::vector<std::vector<RingPoly>> b{{s(1, 0, 0), s(0, 1, 0)}, {s(0, 1, 0), s(1, 0, 0)}};
  CHECK(bareiss_rank(b) == 2);
}

TEST_CASE("rational nullspace spans exactly the kernel") {
  std::vector<std::vector<Rational>> m{
      {Rational(1), Rational(0), Rational(-1), Rational(2)},
      {Rational(0), Rational(1), Rational(1), Rational(-1)},
  };
  auto basis = rational_nullspace(m, 4);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis)
    for (const auto& row : m) {
      Rational dot(0);
      for (std::size_t c = 0; c < 4; ++c) dot += row[c] * v[c];
      CHECK(dot.is_zero());
    }
  // empty constraint set: the whole space
  CHECK(rational_nullspace({}, 3).size() == 3);
}

TEST_CASE("rational solve: exact solution and singular detection") {
  std::vector<std::vector<Rational>> a{
      {Rational(2), Rational(1)},
      {Rational(1), Rational(3)},
  };
  std::vector<Rational> x = rational_solve(a, {Rational(5), Rational(10)});
  CHECK(x[0] == Rational(1));
  CHECK(x[1] == Rational(3));
  std::vector<std::vector<Rational>> sing{
      {Rational(1), Rational(2)},
      {Rational(2), Rational(4)},
  };
  CHECK_THROWS_AS(rational_solve(sing, {Rational(1), Rational(1)}), NumericError);
}

TEST_CASE("rationalize recovers simple fractions and respects tolerance") {
  CHECK(rationalize(0.0) == Rational(0));
  CHECK(rationalize(0.5) == Rational(1, 2));
  CHECK(rationalize(-0.2) == Rational(-1, 5));
  CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
  CHECK(rationalize(2048.0) == Rational(2048));
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> xs(-100.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    double x = xs(rng);
    Rational r = rationalize(x);
    CHECK(std::abs(r.to_double() - x) <= 1e-13 * std::abs(x));
  }
  CHECK_THROWS_AS(rationalize(std::nan("")), NumericError);
}
