#include "core/simulate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "core/error.hpp"
#include "core/zeros.hpp"

namespace mel {

using json = nlohmann::ordered_json;

void SimConfig::validate() const {
  // epsilon = 0 integrates the unperturbed system (closure/energy checks).
  if (!(epsilon >= 0.0) || epsilon > 0.05)
    throw DomainError("epsilon must be in [0, 0.05] (first-order theory regime)");
  if (!(step_tol > 0.0) || !(event_tol > 0.0)) throw DomainError("tolerances must be positive");
  if (max_crossings < 2) throw DomainError("max_crossings must allow one revolution");
  if (fixed_step && !(*fixed_step > 0.0)) throw DomainError("fixed_step must be positive");
}

namespace {

struct State {
  double x, y;
};

struct Rhs {
  DensePoly2 pp, qp, pm, qm;
  double eps;

  // side: +1 right subsystem, -1 left subsystem
  State eval(const State& s, int side) const {
    if (side > 0)
      return {-s.y + eps * pp.eval(s.x, s.y), 1.0 - s.x + eps * qp.eval(s.x, s.y)};
    return {-s.y + eps * pm.eval(s.x, s.y), s.x + eps * qm.eval(s.x, s.y)};
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseStep {
  State y0, y1;
  double h;
  // contd5 coefficients per component
  double r1x, r2x, r3x, r4x, r5x;
  double r1y, r2y, r3y, r4y, r5y;

  State at(double theta) const {
    double th1 = 1.0 - theta;
    double x = r1x + theta * (r2x + th1 * (r3x + theta * (r4x + th1 * r5x)));
    double y = r1y + theta * (r2y + th1 * (r3y + theta * (r4y + th1 * r5y)));
    return {x, y};
  }
};

struct StepResult {
  State y1;
  State k_last;  // FSAL derivative at y1
  double err;    // scaled error norm
  DenseStep dense;
};

StepResult dopri5_step(const Rhs& rhs, int side, const State& y0, const State& k1, double h,
                       double tol) {
  auto axpy = [](const State& base, double c, const State& k) {
    return State{base.x + c * k.x, base.y + c * k.y};
  };
  State s2 = axpy(y0, h * a21, k1);
  State k2 = rhs.eval(s2, side);
  State s3{y0.x + h * (a31 * k1.x + a32 * k2.x), y0.y + h * (a31 * k1.y + a32 * k2.y)};
  State k3 = rhs.eval(s3, side);
  State s4{y0.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
           y0.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y)};
  State k4 = rhs.eval(s4, side);
  State s5{y0.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
           y0.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y)};
  State k5 = rhs.eval(s5, side);
  State s6{y0.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
           y0.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y)};
  State k6 = rhs.eval(s6, side);
  State y1{y0.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
           y0.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y)};
  State k7 = rhs.eval(y1, side);

  double err_x = h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x);
  double err_y = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);
  double sc_x = tol + tol * std::max(std::abs(y0.x), std::abs(y1.x));
  double sc_y = tol + tol * std::max(std::abs(y0.y), std::abs(y1.y));
  double err = std::sqrt(0.5 * ((err_x / sc_x) * (err_x / sc_x) + (err_y / sc_y) * (err_y / sc_y)));

  StepResult r;
  r.y1 = y1;
  r.k_last = k7;
  r.err = err;
  DenseStep& ds = r.dense;
  ds.y0 = y0;
  ds.y1 = y1;
  ds.h = h;
  double dx = y1.x - y0.x, dy = y1.y - y0.y;
  ds.r1x = y0.x;
  ds.r2x = dx;
  ds.r3x = h * k1.x - dx;
  ds.r4x = dx - h * k7.x - ds.r3x;
  ds.r5x = h * (d1 * k1.x + d3 * k3.x + d4 * k4.x + d5 * k5.x + d6 * k6.x + d7 * k7.x);
  ds.r1y = y0.y;
  ds.r2y = dy;
  ds.r3y = h * k1.y - dy;
  ds.r4y = dy - h * k7.y - ds.r3y;
  ds.r5y = h * (d1 * k1.y + d3 * k3.y + d4 * k4.y + d5 * k5.y + d6 * k6.y + d7 * k7.y);
  return r;
}

// Classical RK4 for the fixed-step reproducibility mode; dense output is the
// cubic Hermite interpolant written in the same contd5 form (r5 = 0).
StepResult rk4_step(const Rhs& rhs, int side, const State& y0, const State& k1, double h) {
  State k2 = rhs.eval({y0.x + 0.5 * h * k1.x, y0.y + 0.5 * h * k1.y}, side);
  State k3 = rhs.eval({y0.x + 0.5 * h * k2.x, y0.y + 0.5 * h * k2.y}, side);
  State k4 = rhs.eval({y0.x + h * k3.x, y0.y + h * k3.y}, side);
  State y1{y0.x + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
           y0.y + h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y)};
  State kend = rhs.eval(y1, side);

  StepResult r;
  r.y1 = y1;
  r.k_last = kend;
  r.err = 0.0;
  DenseStep& ds = r.dense;
  ds.y0 = y0;
  ds.y1 = y1;
  ds.h = h;
  double dx = y1.x - y0.x, dy = y1.y - y0.y;
  ds.r1x = y0.x;
  ds.r2x = dx;
  ds.r3x = h * k1.x - dx;
  ds.r4x = 2 * dx - h * (k1.x + kend.x);
  ds.r5x = 0.0;
  ds.r1y = y0.y;
  ds.r2y = dy;
  ds.r3y = h * k1.y - dy;
  ds.r4y = 2 * dy - h * (k1.y + kend.y);
  ds.r5y = 0.0;
  return r;
}

// Locate the first zero of the interpolated x(theta) in (0, 1] by bisection.
double locate_crossing(const DenseStep& ds, double event_tol) {
  double lo = 0.0, hi = 1.0;
  double xlo = ds.y0.x;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double xm = ds.at(mid).x;
    if (std::abs(xm) <= event_tol) return mid;
    if ((xlo < 0) == (xm < 0)) {
      lo = mid;
      xlo = xm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_guards(const State& s) {
  if (std::abs(s.x) > 10.0 || std::abs(s.y) > 10.0)
    throw NumericError("trajectory escape (|state| > 10)");
  double dx = s.x - 1.0;
  if (dx * dx + s.y * s.y < 1e-6)
    throw NumericError("saddle capture (trajectory within 1e-3 of the saddle (1,0))");
}

}  // namespace

SectionResult integrate_to_section(double y0, const PerturbationSpec& spec, const SimConfig& cfg,
                                   std::vector<std::array<double, 3>>* trace) {
  cfg.validate();
  if (!(y0 > -1.0 && y0 < 0.0)) throw DomainError("integrate_to_section needs y0 in (-1, 0)");

  Rhs rhs{DensePoly2::from(spec.a_plus, spec.n), DensePoly2::from(spec.b_plus, spec.n),
          DensePoly2::from(spec.a_minus, spec.n), DensePoly2::from(spec.b_minus, spec.n),
          cfg.epsilon};

  State s{0.0, y0};
  int side = 1;  // entering x > 0 (xdot = -y0 > 0)
  bool armed = false;
  int crossings = 0;
  double t = 0.0;
  double dt = cfg.fixed_step ? *cfg.fixed_step : 1e-3;
  State k1 = rhs.eval(s, side);
  if (trace) trace->push_back({t, s.x, s.y});

  const long max_steps = 20'000'000;
  for (long step = 0; step < max_steps; ++step) {
    if (!cfg.fixed_step && dt < 1e-14) throw NumericError("integrator step size underflow");

    StepResult sr = cfg.fixed_step ? rk4_step(rhs, side, s, k1, dt)
                                   : dopri5_step(rhs, side, s, k1, dt, cfg.step_tol);
    if (!cfg.fixed_step && sr.err > 1.0) {
      dt *= std::max(0.2, 0.9 * std::pow(sr.err, -0.2));
      continue;
    }

    // Arm event detection only once the step *starts* clear of the manifold;
    // the departure step right after a switch must not re-trigger on its own
    // crossing point.
    if (!armed && std::abs(s.x) > 10.0 * cfg.event_tol) armed = true;

    bool crossed = armed && ((s.x < 0) != (sr.y1.x < 0) || std::abs(sr.y1.x) <= cfg.event_tol);
    if (crossed) {
      double theta = locate_crossing(sr.dense, cfg.event_tol);
      State ev = sr.dense.at(theta);
      t += theta * dt;
      s = ev;
      check_guards(s);
      if (trace) trace->push_back({t, s.x, s.y});
      ++crossings;
      if (crossings > cfg.max_crossings)
        throw NumericError("max_crossings exceeded without closing a revolution");
      side = -side;
      armed = false;
      k1 = rhs.eval(s, side);
      if (side > 0 && s.y < 0.0) return {s.y, crossings};  // back on the section
      continue;
    }

    t += dt;
    s = sr.y1;
    k1 = sr.k_last;
    check_guards(s);
    if (trace) trace->push_back({t, s.x, s.y});
    if (!cfg.fixed_step) {
      double fac = 0.9 * std::pow(std::max(sr.err, 1e-10), -0.2);
      dt *= std::min(5.0, std::max(0.2, fac));
      dt = std::min(dt, 0.1);
    }
  }
  throw NumericError("integrator step budget exhausted");
}

double displacement(double h, const PerturbationSpec& spec, const SimConfig& cfg) {
  if (!(h > 0.02 && h < 0.98)) throw DomainError("displacement needs h in (0.02, 0.98)");
  double y0 = -std::sqrt(1.0 - h);
  double y1 = integrate_to_section(y0, spec, cfg).y1;
  return (y0 - y1) * (y0 + y1);  // (1 - y1^2) - (1 - y0^2), cancellation-free
}

CycleReport find_limit_cycles(const PerturbationSpec& spec, const SimConfig& cfg, double h_lo,
                              double h_hi, int grid) {
  cfg.validate();
  if (!(h_lo > 0.02 && h_lo < h_hi && h_hi < 0.98))
    throw DomainError("find_limit_cycles needs 0.02 < h_lo < h_hi < 0.98");
  if (grid < 2) throw DomainError("find_limit_cycles grid too small");

  CycleReport rep;
  std::vector<double> hs(grid), ds(grid);
  for (int i = 0; i < grid; ++i) {
    hs[i] = h_lo + (h_hi - h_lo) * i / (grid - 1);
    ds[i] = displacement(hs[i], spec, cfg);
  }

  for (int i = 0; i + 1 < grid; ++i) {
    if (ds[i] == 0.0 || (ds[i] < 0) == (ds[i + 1] < 0)) continue;
    double lo = hs[i], hi = hs[i + 1], dlo = ds[i];
    double hm = lo, dm = dlo;
    for (int it = 0; it < 80; ++it) {
      hm = 0.5 * (lo + hi);
      dm = displacement(hm, spec, cfg);
      if (std::abs(dm) <= 10.0 * cfg.event_tol || hi - lo < 1e-13) break;
      if ((dm < 0) == (dlo < 0)) {
        lo = hm;
        dlo = dm;
      } else {
        hi = hm;
      }
    }
    FixedPointHit fp;
    fp.h = hm;
    fp.y_section = -std::sqrt(1.0 - hm);
    fp.residual = std::abs(dm);
    // Return-map slope through the displacement derivative: d'(h) < 0 means
    // the image h shrinks past the fixed point (slope < 1 in h).
    double delta = 1e-6 * std::max(1.0, std::abs(hm));
    double slope_num = displacement(std::min(hm + delta, 0.979), spec, cfg) -
                       displacement(std::max(hm - delta, 0.021), spec, cfg);
    fp.stability = slope_num > 0 ? 1 : (slope_num < 0 ? -1 : 0);
    rep.fixed_points.push_back(fp);
  }

  ClosedForm cf = closed_form(spec);
  ZeroReport zr = count_zeros(cf, h_lo, h_hi, 4096, 1e-12);
  for (const auto& z : zr.zeros) rep.melnikov_zeros.push_back(z.h);

  // Greedy nearest pairing.
  std::vector<bool> zero_used(rep.melnikov_zeros.size(), false);
  for (const auto& fp : rep.fixed_points) {
    int best = -1;
    double best_d = 1e9;
    for (std::size_t k = 0; k < rep.melnikov_zeros.size(); ++k) {
      if (zero_used[k]) continue;
      double d = std::abs(rep.melnikov_zeros[k] - fp.h);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(k);
      }
    }
    if (best >= 0) {
      zero_used[best] = true;
      rep.matched.push_back({fp.h, rep.melnikov_zeros[best], best_d});
    } else {
      rep.unmatched_cycles.push_back(fp.h);
    }
  }
  for (std::size_t k = 0; k < rep.melnikov_zeros.size(); ++k)
    if (!zero_used[k]) rep.unmatched_zeros.push_back(rep.melnikov_zeros[k]);
  std::sort(rep.matched.begin(), rep.matched.end(),
            [](const CycleReport::Match& a, const CycleReport::Match& b) {
              return a.h_cycle < b.h_cycle;
            });
  return rep;
}

std::string CycleReport::to_json() const {
  json fps = json::array();
  for (const auto& f : fixed_points)
    fps.push_back({{"h", f.h},
                   {"y_section", f.y_section},
                   {"residual", f.residual},
                   {"stability", f.stability}});
  json ms = json::array();
  for (const auto& m : matched)
    ms.push_back({{"h_cycle", m.h_cycle}, {"h_zero", m.h_zero}, {"delta", m.delta}});
  json j;
  j["fixed_points"] = fps;
  j["melnikov_zeros"] = melnikov_zeros;
  j["matched"] = ms;
  j["unmatched_cycles"] = unmatched_cycles;
  j["unmatched_zeros"] = unmatched_zeros;
  return j.dump();
}

}  // namespace mel
