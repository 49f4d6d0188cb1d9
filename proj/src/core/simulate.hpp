#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/melnikov.hpp"
#include "core/model.hpp"

namespace mel {

struct SimConfig {
  double epsilon = 1e-3;
  double step_tol = 1e-10;   // adaptive local error tolerance
  double event_tol = 1e-12;  // |x| at switching events
  int max_crossings = 64;
  std::optional<double> fixed_step;  // classical RK4 with this step, for bit-reproducible runs

  void validate() const;  // epsilon in (0, 0.05], tolerances positive
};

// y1 is the next crossing of {x = 0, y < 0}.  Under strong perturbations the
// trajectory can leave the period annulus and return below y = -1; callers
// that need points inside the annulus (fixed-point refinement does) get them
// because displacement vanishes there.
struct SectionResult {
  double y1 = 0.0;
  int crossings = 0;
};

// One full revolution of the perturbed piecewise flow
//   x >= 0: xdot = -y + eps p+(x,y), ydot = 1 - x + eps q+(x,y)
//   x <  0: xdot = -y + eps p-(x,y), ydot =     x + eps q-(x,y)
// from (0, y0) with y0 in (-1,0), switching at x = 0 (events located by
// bisection on dense output), back to the section {x = 0, y < 0}.
// Throws NumericError on escape, saddle capture, or crossing-budget overflow.
SectionResult integrate_to_section(double y0, const PerturbationSpec& spec, const SimConfig& cfg,
                                   std::vector<std::array<double, 3>>* trace = nullptr);

// Poincare displacement in the energy-like coordinate h = 1 - y^2:
// d(h) = (1 - y1^2) - h.  Zero exactly on closed orbits.
double displacement(double h, const PerturbationSpec& spec, const SimConfig& cfg);

struct FixedPointHit {
  double h = 0.0;
  double y_section = 0.0;
  double residual = 0.0;
  int stability = 0;  // sign(return-map slope - 1)
};

struct CycleReport {
  std::vector<FixedPointHit> fixed_points;
  std::vector<double> melnikov_zeros;
  struct Match {
    double h_cycle, h_zero, delta;
  };
  std::vector<Match> matched;
  std::vector<double> unmatched_cycles, unmatched_zeros;

  std::string to_json() const;
};

// Scan d(h) on a grid over [h_lo, h_hi], refine each sign change by bisection
// to |d| <= 10 * event_tol, and pair the fixed points with the Melnikov zeros
// of the same spec.
CycleReport find_limit_cycles(const PerturbationSpec& spec, const SimConfig& cfg, double h_lo,
                              double h_hi, int grid);

}  // namespace mel
