#pragma once

#include <map>
#include <string>
#include <utility>

#include "core/rational.hpp"
#include "core/symscalar.hpp"

namespace mel {

// Element of Q[x,y] with x standing for pi and y for ln 2.  The rank engine
// works here: fraction-free elimination stays inside the ring, and the
// products of transcendental parts that SymScalar forbids are legitimate
// intermediate quantities of a determinant.
class RingPoly {
 public:
  RingPoly() = default;
  explicit RingPoly(const Rational& c) { if (!c.is_zero()) t_[{0, 0}] = c; }
  static RingPoly from(const SymScalar& s);

  bool is_zero() const { return t_.empty(); }

  RingPoly operator-() const;
  RingPoly& operator+=(const RingPoly& o);
  RingPoly& operator-=(const RingPoly& o);
  friend RingPoly operator+(RingPoly a, const RingPoly& b) { return a += b; }
  friend RingPoly operator-(RingPoly a, const RingPoly& b) { return a -= b; }
  friend RingPoly operator*(const RingPoly& a, const RingPoly& b);

  friend bool operator==(const RingPoly& a, const RingPoly& b) { return a.t_ == b.t_; }

  // Exact division; throws RingError when the quotient does not exist.
  RingPoly divide_exact(const RingPoly& d) const;

  std::string to_string() const;

 private:
  // (x degree, y degree) -> coefficient; zero coefficients never stored.
  std::map<std::pair<int, int>, Rational> t_;
};

}  // namespace mel
