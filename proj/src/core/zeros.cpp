#include "core/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "core/error.hpp"
#include "core/sturm.hpp"

namespace mel {

using json = nlohmann::ordered_json;

namespace {

double h_of_lambda(double lam) { return (1.0 - lam) * (1.0 + lam); }

void bisect_bracket(const ClosedForm& cf, double& lo, double& hi, double vlo, double tol) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution floor
    double vm = mstar_eval(cf, mid);
    if (vm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((vlo < 0) == (vm < 0)) {
      lo = mid;
      vlo = vm;
    } else {
      hi = mid;
    }
  }
}

}  // namespace

ZeroReport count_zeros_lambda(const ClosedForm& cf, double lambda_min, double lambda_max, int grid,
                              double tol, double geo_floor) {
  if (!(lambda_min > 0.0 && lambda_min < lambda_max && lambda_max < 1.0))
    throw DomainError("count_zeros: need 0 < lambda_min < lambda_max < 1");
  if (grid < 2) throw DomainError("count_zeros: grid too small");
  if (!(tol > 0.0)) throw DomainError("count_zeros: tol must be positive");

  // Uniform grid plus geometric tails toward both endpoints (zeros from the
  // endpoint constructions sit in geometric ladders there).
  std::set<double> pts;
  double d = (lambda_max - lambda_min) / (grid - 1);
  for (int i = 0; i < grid; ++i) pts.insert(lambda_min + i * d);
  pts.insert(lambda_max);
  for (double lam = 0.5 * (lambda_min + d); lam > std::max(lambda_min, geo_floor); lam *= 0.5)
    pts.insert(lam);
  for (double mu = 0.5 * ((1.0 - lambda_max) + d); mu > std::max(1.0 - lambda_max, geo_floor);
       mu *= 0.5)
    pts.insert(1.0 - mu);

  std::vector<double> lam(pts.begin(), pts.end());
  std::vector<double> val(lam.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    val[i] = mstar_eval(cf, lam[i]);
    scale = std::max(scale, std::abs(val[i]));
  }

  ZeroReport rep;
  rep.scan.grid_points = static_cast<int>(lam.size());
  rep.scan.h_min = h_of_lambda(lambda_max);
  rep.scan.h_max = h_of_lambda(lambda_min);
  rep.scan.tol = tol;

  for (std::size_t i = 0; i + 1 < lam.size(); ++i) {
    bool change = (val[i] < 0 && val[i + 1] > 0) || (val[i] > 0 && val[i + 1] < 0);
    if (val[i] == 0.0) {
      // A grid point lands exactly on a zero.  Count it only when it is an
      // isolated sign change; flat stretches (identically zero function) and
      // tangencies are not isolated zeros.
      if (i == 0 || val[i - 1] == 0.0 || val[i + 1] == 0.0) continue;
      if ((val[i - 1] < 0) == (val[i + 1] < 0)) {
        rep.suspected_multiple.push_back(h_of_lambda(lam[i]));
        continue;
      }
      ZeroHit hit;
      hit.lambda = lam[i];
      hit.h = h_of_lambda(lam[i]);
      hit.bracket_lo = hit.bracket_hi = lam[i];
      hit.residual = 0.0;
      rep.zeros.push_back(hit);
      continue;
    }
    if (!change) continue;

    // Guard against two zeros inside one cell: refine the cell and recount.
    int sub_changes = 0;
    double prev = val[i];
    for (int s = 1; s <= 64; ++s) {
      double x = lam[i] + (lam[i + 1] - lam[i]) * s / 64.0;
      double v = (s == 64) ? val[i + 1] : mstar_eval(cf, x);
      if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++sub_changes;
      if (v != 0.0) prev = v;
    }
    if (sub_changes > 1)
      throw NumericError("count_zeros: grid too coarse, " + std::to_string(sub_changes) +
                         " zeros in one cell near lambda=" + std::to_string(lam[i]));

    double lo = lam[i], hi = lam[i + 1];
    bisect_bracket(cf, lo, hi, val[i], tol);
    ZeroHit hit;
    hit.bracket_lo = lo;
    hit.bracket_hi = hi;
    hit.lambda = 0.5 * (lo + hi);
    hit.h = h_of_lambda(hit.lambda);
    hit.residual = std::abs(mstar_eval(cf, hit.lambda));
    rep.zeros.push_back(hit);
  }

  // Near-tangencies: local minima of |M*| at noise level without sign change.
  for (std::size_t i = 1; i + 1 < lam.size(); ++i) {
    if (val[i] == 0.0) continue;
    bool local_min = std::abs(val[i]) < std::abs(val[i - 1]) && std::abs(val[i]) < std::abs(val[i + 1]);
    bool same_sign = (val[i - 1] > 0) == (val[i + 1] > 0);
    if (local_min && same_sign && std::abs(val[i]) <= 1e-9 * std::max(1.0, scale))
      rep.suspected_multiple.push_back(h_of_lambda(lam[i]));
  }

  std::sort(rep.zeros.begin(), rep.zeros.end(),
            [](const ZeroHit& a, const ZeroHit& b) { return a.h < b.h; });
  std::sort(rep.suspected_multiple.begin(), rep.suspected_multiple.end());
  rep.count = static_cast<int>(rep.zeros.size());
  return rep;
}

ZeroReport count_zeros(const ClosedForm& cf, double h_min, double h_max, int grid, double tol) {
  if (!(h_min > 0.0 && h_min < h_max && h_max < 1.0))
    throw DomainError("count_zeros: need 0 < h_min < h_max < 1");
  if (grid < 100) throw DomainError("count_zeros: grid must be >= 100");
  ZeroReport rep =
      count_zeros_lambda(cf, std::sqrt(1.0 - h_max), std::sqrt(1.0 - h_min), grid, tol);
  rep.scan.h_min = h_min;
  rep.scan.h_max = h_max;
  return rep;
}

std::string ZeroReport::to_json() const {
  json zs = json::array();
  for (const auto& z : zeros)
    zs.push_back({{"h", z.h},
                  {"lambda", z.lambda},
                  {"bracket", {z.bracket_lo, z.bracket_hi}},
                  {"residual", z.residual}});
  json j;
  j["count"] = count;
  j["zeros"] = zs;
  j["suspected_multiple"] = suspected_multiple;
  j["scan"] = {{"grid_points", scan.grid_points},
               {"h_min", scan.h_min},
               {"h_max", scan.h_max},
               {"tol", scan.tol}};
  return j.dump();
}

Poly theta_poly(const ClosedForm& cf) {
  Poly u0 = cf.g.w_to_lambda();  // g(lambda^2)
  Poly one_minus_l2(Var::lambda, {SymScalar(1), SymScalar(0), SymScalar(-1)});
  Poly u = one_minus_l2 * u0;
  Poly lf = cf.f.shifted(1);
  Poly theta = lf.derivative() * u - lf * u.derivative() + u0 * u0;
  if (theta.degree() > 2 * cf.n)
    throw NumericError("theta degree bound violated (internal inconsistency)");
  return theta;
}

namespace {

// Root count in (0,1): float Sturm first, exact fallback when the projection
// degenerates and the coefficients are purely rational.
int count_roots_open01(const Poly& p) {
  try {
    return sturm_count_open01(p.coeffs_approx());
  } catch (const NumericError&) {
    bool rational = true;
    for (const auto& c : p.coeffs())
      if (!c.is_rational()) rational = false;
    if (!rational) throw;
    std::vector<Rational> rc;
    rc.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) rc.push_back(c.rat());
    return sturm_count_open01_exact(std::move(rc));
  }
}

}  // namespace

BoundCertificate upper_bound_certificate(const ClosedForm& cf) {
  BoundCertificate cert;
  cert.n = cf.n;
  cert.g_is_zero = cf.g.is_zero();
  if (cert.g_is_zero) {
    // Mbar = lambda f(lambda): zero count is the root count of f itself.
    cert.bound = cf.f.is_zero() ? 0 : count_roots_open01(cf.f);
    return cert;
  }
  cert.u0 = cf.g.w_to_lambda();
  Poly one_minus_l2(Var::lambda, {SymScalar(1), SymScalar(0), SymScalar(-1)});
  cert.u = one_minus_l2 * cert.u0;
  cert.theta = theta_poly(cf);
  cert.zeros_u_in_unit = count_roots_open01(cert.u);
  cert.zeros_theta_in_unit = cert.theta.is_zero() ? 0 : count_roots_open01(cert.theta);
  cert.bound = cert.zeros_u_in_unit + cert.zeros_theta_in_unit + 1;
  int cap = 2 * cf.n + (cf.n + 1) / 2;
  if (cert.bound > cap)
    throw NumericError("certificate bound " + std::to_string(cert.bound) + " exceeds cap " +
                       std::to_string(cap));
  return cert;
}

std::string BoundCertificate::to_json() const {
  auto poly_str = [](const Poly& p) { return p.to_string(); };
  json j;
  j["n"] = n;
  j["g_is_zero"] = g_is_zero;
  j["u"] = poly_str(u);
  j["u0"] = poly_str(u0);
  j["theta"] = poly_str(theta);
  j["zeros_u_in_unit_interval"] = zeros_u_in_unit;
  j["zeros_theta_in_unit_interval"] = zeros_theta_in_unit;
  j["bound"] = bound;
  return j.dump();
}

ZmaxBounds zmax_table(int n) {
  if (n < 1) throw DomainError("zmax_table requires n >= 1");
  ZmaxBounds z;
  z.lower = n + (n + 1) / 2;
  z.upper = n <= 4 ? z.lower : 2 * n + (n + 1) / 2;
  return z;
}

}  // namespace mel
