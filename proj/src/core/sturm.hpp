#pragma once

#include <vector>

#include "core/rational.hpp"

namespace mel {

// Number of distinct real roots in the open interval (0,1), by Sturm chains
// on double coefficients (index = power).  Roots at the endpoints are
// deflated away first, so the count is for the open interval.  Throws
// NumericError when the projected polynomial is degenerate (leading
// coefficient vanishes at double scale) or the chain collapses.
int sturm_count_open01(std::vector<double> coeffs);

// Exact version over Q; never degenerate.
int sturm_count_open01_exact(std::vector<Rational> coeffs);

}  // namespace mel
