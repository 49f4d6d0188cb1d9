#include "core/expansion.hpp"

#include <cmath>

#include <json.hpp>

#include "core/error.hpp"
#include "core/series.hpp"

namespace mel {

using json = nlohmann::ordered_json;

std::vector<Rational> phi0_taylor(int m) {
  if (m < 0) throw DomainError("phi0_taylor order must be nonnegative");
  // sqrt(1+x^2) = sum_i C(1/2,i) x^{2i}; integrate term by term.
  std::vector<Rational> out(m + 1);
  for (int i = 0; i <= m; ++i)
    out[i] = Rational::binomial(Rational(1, 2), i) / Rational(2 * i + 1);
  return out;
}

namespace {

json symscalar_json(const SymScalar& s) {
  return {{"q", s.rat().to_string()},
          {"pi", s.pi_coeff().to_string()},
          {"ln2", s.ln2_coeff().to_string()}};
}

}  // namespace

HomoclinicExpansion expand_homoclinic(const ClosedForm& cf, int order) {
  if (order < 0) throw DomainError("expansion order must be nonnegative");
  const int n = cf.n;
  HomoclinicExpansion out;
  out.n = n;
  out.order = order;

  // Log part: g(1-h) I10(h) contributes -h g(1-h)/4 * ln h.
  Poly g_h = cf.g.w_to_h();  // g(1-h) as a polynomial in h
  Poly bs = g_h.shifted(1) * SymScalar(Rational(-1, 4));
  out.bstar.resize((n + 1) / 2);
  for (int i = 1; i <= (n + 1) / 2; ++i) out.bstar[i - 1] = bs.coeff(i);

  // Analytic part: lambda f(lambda) = sum_i f_i (1-h)^{(i+1)/2}, plus
  // g(1-h) gamma(h) with gamma(h) = [sqrt(1-h) + h ln(1+sqrt(1-h))]/2 and
  // ln(1+sqrt(1-h)) = ln 2 + ln(1 - (1-sqrt(1-h))/2).
  Series acc(order);
  for (int i = 0; i <= cf.f.degree(); ++i) {
    if (cf.f.coeff(i).is_zero()) continue;
    acc += Series::one_minus_pow(Rational(i + 1, 2), order) * cf.f.coeff(i);
  }

  Series sqrt_series = Series::one_minus_pow(Rational(1, 2), order);
  // u = (1 - sqrt(1-h))/2 has zero constant term.
  Series u(order);
  u.set_coeff(0, SymScalar(Rational(1, 2)));
  u -= sqrt_series * SymScalar(Rational(1, 2));
  Series log_tail = Series::log_one_minus(u);

  Series gamma = sqrt_series * SymScalar(Rational(1, 2));
  gamma += Series(order, {SymScalar(0), SymScalar::ln2(Rational(1, 2))});
  gamma += log_tail.shifted(1) * SymScalar(Rational(1, 2));

  acc += Series::from_poly(g_h, order) * gamma;

  out.b.resize(order + 1);
  for (int j = 0; j <= order; ++j) out.b[j] = acc.coeff(j);
  return out;
}

double HomoclinicExpansion::eval(double h) const {
  double logpoly = 0.0;
  for (std::size_t i = bstar.size(); i-- > 0;) logpoly = logpoly * h + bstar[i].approx();
  logpoly *= h;  // series starts at h^1
  double analytic = 0.0;
  for (std::size_t j = b.size(); j-- > 0;) analytic = analytic * h + b[j].approx();
  return logpoly * std::log(h) + analytic;
}

std::string HomoclinicExpansion::to_json() const {
  json terms = json::array();
  for (std::size_t i = 0; i < bstar.size(); ++i)
    terms.push_back({{"power", std::to_string(i + 1)},
                     {"log_power", 1},
                     {"coeff", symscalar_json(bstar[i])}});
  for (std::size_t j = 0; j < b.size(); ++j)
    terms.push_back(
        {{"power", std::to_string(j)}, {"log_power", 0}, {"coeff", symscalar_json(b[j])}});
  json j;
  j["variable"] = "h";
  j["order"] = order;
  j["terms"] = terms;
  return j.dump();
}

HopfExpansion expand_hopf(const ClosedForm& cf, int order) {
  if (order < 0) throw DomainError("expansion order must be nonnegative");
  const int n = cf.n;
  HopfExpansion out;
  out.n = n;
  out.order = order;

  // I10(h) = sqrt(1-h) phi3(1-h) with phi3(u) = sum_i varsigma_i u^i (1-u)^{1/2-i};
  // the half-integer powers cancel and phi3 is analytic at u = 0.
  const int tail = n / 2 + order;
  std::vector<Rational> vs = phi0_taylor(tail);
  Series phi3(tail);
  for (int i = 0; i <= tail; ++i) {
    Series p = Series::one_minus_pow(Rational(1, 2) - Rational(i), tail);
    phi3 += p.shifted(i) * SymScalar(vs[i]);
  }
  Series big_g = Series::from_poly(cf.g, tail) * phi3;  // g(u) phi3(u), u = 1-h

  out.c.resize(n + order + 1);
  for (int i = 0; i <= n; ++i) {
    SymScalar v = cf.f.coeff(i);
    if (i % 2 == 0) v += big_g.coeff(i / 2);
    out.c[i] = v;
  }
  for (int j = 1; j <= order; ++j) out.c[n + j] = big_g.coeff(n / 2 + j);
  return out;
}

Rational HopfExpansion::exponent(int i) const {
  if (i < 0 || i >= static_cast<int>(c.size())) throw DomainError("hopf coefficient index");
  if (i <= n) return Rational(i, 2);
  return Rational(n / 2 + (i - n));
}

double HopfExpansion::eval(double h) const {
  double u = 1.0 - h;
  double bracket = 0.0;
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    bracket += c[i].approx() * std::pow(u, exponent(i).to_double());
  return std::sqrt(u) * bracket;
}

std::string HopfExpansion::to_json() const {
  json terms = json::array();
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    // Total power of (1-h), including the sqrt(1-h) prefactor.
    Rational p = exponent(i) + Rational(1, 2);
    terms.push_back({{"power", p.to_string()}, {"log_power", 0}, {"coeff", symscalar_json(c[i])}});
  }
  json j;
  j["variable"] = "1-h";
  j["order"] = order;
  j["terms"] = terms;
  return j.dump();
}

}  // namespace mel
