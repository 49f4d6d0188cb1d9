#pragma once

#include <functional>

namespace mel {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Adaptive Gauss-Kronrod 7(15) quadrature on [a,b] to the requested absolute
// tolerance.  Throws NumericError if the tolerance cannot be met within the
// subdivision budget; the error message carries the achieved estimate.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     int max_depth = 30);

}  // namespace mel
