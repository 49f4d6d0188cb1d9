#pragma once

#include <vector>

#include "core/rational.hpp"
#include "core/ringpoly.hpp"

namespace mel {

// Fraction-free (Bareiss) rank over an integral domain.  T needs +, -, *,
// is_zero() and divide_exact(); the divisions are exact by the Sylvester
// identity, so no field of fractions is required.
template <typename T>
int bareiss_rank(std::vector<std::vector<T>> m) {
  if (m.empty() || m[0].empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  T prev_pivot;  // value-initialized; replaced before first use
  bool have_prev = false;
  std::size_t rank = 0;
  std::size_t pivot_col = 0;
  for (std::size_t step = 0; step < rows && pivot_col < cols; ++pivot_col) {
    // Find a row with a nonzero entry in this column.
    std::size_t sel = step;
    while (sel < rows && m[sel][pivot_col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[step], m[sel]);
    const T pivot = m[step][pivot_col];
    for (std::size_t i = step + 1; i < rows; ++i) {
      for (std::size_t j = pivot_col + 1; j < cols; ++j) {
        T num = m[i][j] * pivot - m[i][pivot_col] * m[step][j];
        m[i][j] = have_prev ? num.divide_exact(prev_pivot) : num;
      }
      m[i][pivot_col] = T();
    }
    prev_pivot = pivot;
    have_prev = true;
    ++rank;
    ++step;
  }
  return static_cast<int>(rank);
}

// Rational wrapper with the divide_exact the template expects.
struct RatCell {
  Rational v;
  RatCell() = default;
  RatCell(Rational r) : v(std::move(r)) {}  // NOLINT
  bool is_zero() const { return v.is_zero(); }
  RatCell divide_exact(const RatCell& d) const { return RatCell(v / d.v); }
  friend RatCell operator+(const RatCell& a, const RatCell& b) { return RatCell(a.v + b.v); }
  friend RatCell operator-(const RatCell& a, const RatCell& b) { return RatCell(a.v - b.v); }
  friend RatCell operator*(const RatCell& a, const RatCell& b) { return RatCell(a.v * b.v); }
};

int rational_rank(const std::vector<std::vector<Rational>>& m);

// Basis of the rational nullspace {x : m x = 0}, by reduced row echelon form.
std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> m,
                                                      std::size_t cols);

// Exact solution of a square nonsingular system; throws NumericError when the
// matrix is singular.
std::vector<Rational> rational_solve(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> b);

// Best rational approximation by continued fractions, to relative tolerance.
Rational rationalize(double x, double rel_tol = 1e-14);

}  // namespace mel
