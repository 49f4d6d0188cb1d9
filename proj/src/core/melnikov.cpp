#include "core/melnikov.hpp"

#include <cmath>

#include <json.hpp>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace mel {

using json = nlohmann::ordered_json;

double phi0_eval(double u) { return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u)); }

double i10_eval(double h) {
  if (!(h > 0.0) || h > 1.0) throw DomainError("i10_eval requires 0 < h <= 1");
  if (h == 1.0) return 0.0;
  double s = std::sqrt(1.0 - h);
  return 0.5 * (s + h * std::log1p(s) - 0.5 * h * std::log(h));
}

namespace {
Poly one_minus_h_pow(int k) { return one_minus_pow_poly(Var::h, k); }
}  // namespace

double MomentDecomposition::eval(double h) const {
  double v = std::sqrt(1.0 - h) * sqrt_part.eval(h);
  if (!i10_coeff.is_zero()) v += i10_coeff.to_double() * std::pow(h, i10_power) * i10_eval(h);
  return v;
}

MomentDecomposition moment(int r, int k) {
  if (r < 0 || k < 0) throw DomainError("moment indices must be nonnegative");
  MomentDecomposition out;
  out.r = r;
  out.k = k;

  if (r % 2 == 0) {
    // I_{2l,k} = sqrt(1-h) * sum_m C(l,m) h^{l-m} (1-h)^{m+k} / (2m+2k+1)
    int l = r / 2;
    Poly s(Var::h);
    for (int m = 0; m <= l; ++m) {
      Rational c(Rational::binomial_int(l, m), 1);
      c /= Rational(2 * m + 2 * k + 1);
      s += (one_minus_h_pow(m + k) * SymScalar(c)).shifted(l - m);
    }
    out.sqrt_part = std::move(s);
    out.i10_coeff = Rational(0);
    out.i10_power = 0;
    return out;
  }

  // Odd r.  First climb k: I_{1k} = (1-h)^{k-1/2}/(2(k+1)) - (2k-1)h/(2(k+1)) I_{1,k-1},
  // starting from I_{10} itself.
  Poly s = Poly::zero(Var::h);
  Rational c(1);
  int power = 0;
  for (int kk = 1; kk <= k; ++kk) {
    Rational lead = Rational(1, 2 * (kk + 1));
    Rational prev = Rational(2 * kk - 1, 2 * (kk + 1));
    s = one_minus_h_pow(kk - 1) * SymScalar(lead) - s.shifted(1) * SymScalar(prev);
    c = -prev * c;
    power += 1;
  }
  // Then climb l: I_{2l+1,k} = (1-h)^{k+1/2}/(2(l+k+1)) + (2l+1)h/(2(l+k+1)) I_{2l-1,k}.
  int l = (r - 1) / 2;
  for (int ll = 1; ll <= l; ++ll) {
    Rational lead = Rational(1, 2 * (ll + k + 1));
    Rational prev = Rational(2 * ll + 1, 2 * (ll + k + 1));
    s = one_minus_h_pow(k) * SymScalar(lead) + s.shifted(1) * SymScalar(prev);
    c = prev * c;
    power += 1;
  }
  out.sqrt_part = std::move(s);
  out.i10_coeff = c;
  out.i10_power = power;
  return out;
}

ClosedForm closed_form(const PerturbationSpec& spec) {
  spec.validate();
  const int n = spec.n;
  WallisTable table(n + 1);
  ReducedPlus rp = reduce_plus(spec);
  LeftMoments lm = left_moments(spec, table);

  // I0 = sqrt(1-h) * sqrt_i0(h) + t_i0(h) * I10(h), assembled from the exact
  // moment decompositions of (1 - sqrt(h+y^2))^{i+1} y^{2k}.
  Poly sqrt_i0(Var::h), t_i0(Var::h);
  for (int i = 0; i <= n - 1; ++i) {
    for (int k = 0; i + 2 * k <= n - 1; ++k) {
      Rational p = rp.get(i, 2 * k);
      if (p.is_zero()) continue;
      for (int r = 0; r <= i + 1; ++r) {
        Rational c = Rational(2) * p * Rational(Rational::binomial_int(i + 1, r), 1);
        if (r % 2 == 1) c = -c;
        MomentDecomposition md = moment(r, k);
        sqrt_i0 += md.sqrt_part * SymScalar(c);
        if (!md.i10_coeff.is_zero())
          t_i0 += Poly::monomial(Var::h, SymScalar(c * md.i10_coeff), md.i10_power);
      }
    }
  }

  // f(lambda) = -sqrt_i0(1-lambda^2) - sum_k 2 a^+_{0,2k}/(2k+1) lambda^{2k} - sum_l e_l lambda^l
  Poly f = -sqrt_i0.h_to_w().w_to_lambda();
  for (int k = 0; 2 * k <= n; ++k) {
    Rational a = spec.get(spec.a_plus, 0, 2 * k);
    if (!a.is_zero())
      f -= Poly::monomial(Var::lambda, SymScalar(Rational(2) * a / Rational(2 * k + 1)), 2 * k);
  }
  for (int l = 0; l <= n; ++l)
    if (!lm.e[l].is_zero()) f -= Poly::monomial(Var::lambda, lm.e[l], l);

  ClosedForm cf;
  cf.n = n;
  cf.f = std::move(f);
  cf.g = -t_i0.h_to_w();

  if (cf.f.degree() > n || cf.g.degree() > (n - 1) / 2)
    throw NumericError("closed form degree bound violated (internal inconsistency)");
  return cf;
}

std::string ClosedForm::to_json() const {
  json j;
  j["n"] = n;
  auto poly_json = [](const Poly& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) {
      const SymScalar& c = p.coeff(i);
      arr.push_back({{"q", c.rat().to_string()},
                     {"pi", c.pi_coeff().to_string()},
                     {"ln2", c.ln2_coeff().to_string()}});
    }
    return arr;
  };
  j["f"] = {{"variable", "lambda"}, {"coeffs", poly_json(f)}};
  j["g"] = {{"variable", "w"}, {"coeffs", poly_json(g)}};
  return j.dump();
}

double eval_melnikov(const ClosedForm& cf, double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("eval_melnikov requires 0 < h < 1");
  double lam = std::sqrt(1.0 - h);
  return lam * cf.f.eval(lam) + cf.g.eval(1.0 - h) * i10_eval(h);
}

double mstar_eval(const ClosedForm& cf, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("mstar_eval requires 0 < lambda < 1");
  // I10 written in the lambda chart: sqrt(1-h) = lambda exactly, and
  // h = (1-lambda)(1+lambda) is cancellation-free at both ends.  Recovering
  // sqrt(1-h) from h would throw away half the significant digits near
  // lambda = 0, where the endpoint constructions put their zeros.  Extended
  // precision buys the scan ~3 extra digits against the cancellation between
  // lambda f(lambda) and g I10 when the ladder coefficients are tiny.
  long double lam = lambda;
  long double h = (1.0L - lam) * (1.0L + lam);
  long double i10 = 0.5L * (lam + h * std::log1p(lam) - 0.5L * h * std::log(h));
  long double v = lam * cf.f.eval_ld(lam) + cf.g.eval_ld(lam * lam) * i10;
  return static_cast<double>(v);
}

DensePoly2 DensePoly2::from(const CoeffMap& m, int n) {
  DensePoly2 p;
  p.n = n;
  p.c.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  for (const auto& [ij, r] : m) p.c[ij.first * (n + 1) + ij.second] = r.to_double();
  return p;
}

double DensePoly2::eval(double x, double y) const {
  // Horner in x of Horner-in-y rows.
  double acc = 0.0;
  for (int i = n; i >= 0; --i) {
    double row = 0.0;
    for (int j = n - i; j >= 0; --j) row = row * y + c[i * (n + 1) + j];
    acc = acc * x + row;
  }
  return acc;
}

double quadrature_oracle(const PerturbationSpec& spec, double h, double abs_tol) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("quadrature_oracle requires 0 < h < 1");
  const double r = std::sqrt(1.0 - h);
  DensePoly2 pp = DensePoly2::from(spec.a_plus, spec.n);
  DensePoly2 qp = DensePoly2::from(spec.b_plus, spec.n);
  DensePoly2 pm = DensePoly2::from(spec.a_minus, spec.n);
  DensePoly2 qm = DensePoly2::from(spec.b_minus, spec.n);

  // Right arc A -> A1: x = 1 - sqrt(h+y^2), y from -r to r; dx = -y/sqrt(h+y^2) dy.
  auto right = [&](double y) {
    double s = std::sqrt(h + y * y);
    double x = 1.0 - s;
    return qp.eval(x, y) * (-y / s) - pp.eval(x, y);
  };
  // Left arc A1 -> A: x = r cos t, y = r sin t, t from pi/2 to 3pi/2.
  auto left = [&](double t) {
    double x = r * std::cos(t);
    double y = r * std::sin(t);
    return qm.eval(x, y) * (-r * std::sin(t)) - pm.eval(x, y) * (r * std::cos(t));
  };

  constexpr double kPi = 3.14159265358979323846264338327950288;
  QuadResult a = integrate(right, -r, r, 0.5 * abs_tol);
  QuadResult b = integrate(left, 0.5 * kPi, 1.5 * kPi, 0.5 * abs_tol);
  return a.value + b.value;
}

}  // namespace mel
