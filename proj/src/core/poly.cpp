#include "core/poly.hpp"

#include "core/error.hpp"

namespace mel {

const char* var_name(Var v) {
  switch (v) {
    case Var::h: return "h";
    case Var::lambda: return "lambda";
    case Var::w: return "w";
  }
  return "?";
}

namespace {
void require_same_var(Var a, Var b, const char* op) {
  if (a != b)
    throw RingError(std::string("polynomial variable mismatch in ") + op + ": " + var_name(a) +
                    " vs " + var_name(b));
}
const SymScalar kZeroScalar{};
}  // namespace

Poly::Poly(Var var, std::vector<SymScalar> coeffs) : var_(var), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Var var, SymScalar c) { return Poly(var, {std::move(c)}); }

Poly Poly::monomial(Var var, SymScalar c, int power) {
  std::vector<SymScalar> v(power + 1);
  v[power] = std::move(c);
  return Poly(var, std::move(v));
}

const SymScalar& Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZeroScalar;
  return c_[i];
}

void Poly::set_coeff(int i, SymScalar v) {
  if (i >= static_cast<int>(c_.size())) c_.resize(i + 1);
  c_[i] = std::move(v);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r(var_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(-c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_var(var_, o.var_, "+");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_var(var_, o.var_, "-");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_var(a.var_, b.var_, "*");
  if (a.is_zero() || b.is_zero()) return Poly(a.var_);
  std::vector<SymScalar> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.var_, std::move(c));
}

Poly Poly::operator*(const SymScalar& s) const {
  Poly r(var_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(c * s);
  r.trim();
  return r;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].approx();
  return acc;
}

long double Poly::eval_ld(long double x) const {
  long double acc = 0.0L;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].approx_ld();
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(var_);
  std::vector<SymScalar> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = c_[i] * SymScalar(Rational(static_cast<std::int64_t>(i)));
  return Poly(var_, std::move(d));
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return *this;
  std::vector<SymScalar> c(c_.size() + k);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
  return Poly(var_, std::move(c));
}

Poly Poly::w_to_lambda() const {
  if (var_ != Var::w) throw RingError("w_to_lambda on a polynomial in " + std::string(var_name(var_)));
  std::vector<SymScalar> c(c_.empty() ? 0 : 2 * c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) c[2 * i] = c_[i];
  return Poly(Var::lambda, std::move(c));
}

namespace {
// p(x) with x = 1 - y, expanded exactly in y.
std::vector<SymScalar> subst_one_minus(const std::vector<SymScalar>& c) {
  std::vector<SymScalar> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    // (1-y)^i = sum_k C(i,k) (-y)^k
    for (std::size_t k = 0; k <= i; ++k) {
      Rational b(Rational::binomial_int(static_cast<unsigned>(i), static_cast<unsigned>(k)), 1);
      if (k % 2 == 1) b = -b;
      out[k] += c[i] * SymScalar(b);
    }
  }
  return out;
}
}  // namespace

Poly Poly::h_to_w() const {
  if (var_ != Var::h) throw RingError("h_to_w on a polynomial in " + std::string(var_name(var_)));
  return Poly(Var::w, subst_one_minus(c_));
}

Poly Poly::w_to_h() const {
  if (var_ != Var::w) throw RingError("w_to_h on a polynomial in " + std::string(var_name(var_)));
  return Poly(Var::h, subst_one_minus(c_));
}

std::vector<double> Poly::coeffs_approx() const {
  std::vector<double> d;
  d.reserve(c_.size());
  for (const auto& c : c_) d.push_back(c.approx());
  return d;
}

Poly one_minus_pow_poly(Var var, int k) {
  std::vector<SymScalar> c(k + 1);
  for (int m = 0; m <= k; ++m) {
    Rational b(Rational::binomial_int(k, m), 1);
    c[m] = SymScalar(m % 2 == 1 ? -b : b);
  }
  return Poly(var, std::move(c));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].to_string() + ")";
    if (i > 0) {
      s += "*";
      s += var_name(var_);
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace mel
