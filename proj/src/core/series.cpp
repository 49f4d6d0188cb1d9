#include "core/series.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace mel {

namespace {
const SymScalar kZero{};
}

Series::Series(int order, std::vector<SymScalar> coeffs) : c_(std::move(coeffs)) {
  c_.resize(order + 1);
}

Series Series::from_poly(const Poly& p, int order) {
  Series s(order);
  for (int i = 0; i <= std::min(order, p.degree()); ++i) s.c_[i] = p.coeff(i);
  return s;
}

Series Series::one_minus_pow(const Rational& p, int order) {
  Series s(order);
  for (int k = 0; k <= order; ++k) {
    Rational b = Rational::binomial(p, k);
    s.c_[k] = SymScalar(k % 2 == 1 ? -b : b);
  }
  return s;
}

Series Series::log_one_minus(const Series& u) {
  if (!u.coeff(0).is_zero()) throw RingError("log_one_minus needs a series with zero constant term");
  const int n = u.order();
  // -sum_{m>=1} u^m / m; u^m has valuation >= m, so m stops at the order.
  Series acc(n);
  Series upow(n);
  upow.set_coeff(0, SymScalar(1));
  for (int m = 1; m <= n; ++m) {
    upow = upow * u;
    acc -= upow * SymScalar(Rational(1, m));
  }
  return acc;
}

const SymScalar& Series::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

void Series::set_coeff(int i, SymScalar v) {
  if (i < 0 || i >= static_cast<int>(c_.size())) throw RingError("series coefficient out of range");
  c_[i] = std::move(v);
}

Series Series::operator-() const {
  Series r(order());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

Series& Series::operator+=(const Series& o) {
  if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  int order = std::min(a.order(), b.order());
  Series r(order);
  for (int i = 0; i <= order; ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b.coeff(j).is_zero()) continue;
      r.c_[i + j] += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

Series Series::operator*(const SymScalar& s) const {
  Series r(order());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
  return r;
}

Series Series::shifted(int k) const {
  Series r(order());
  for (int i = 0; i + k <= order(); ++i) r.c_[i + k] = c_[i];
  return r;
}

double Series::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].approx();
  return acc;
}

}  // namespace mel
