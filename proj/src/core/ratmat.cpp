#include "core/ratmat.hpp"

#include <cmath>

#include "core/error.hpp"

namespace mel {

int rational_rank(const std::vector<std::vector<Rational>>& m) {
  std::vector<std::vector<RatCell>> cells(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    cells[i] = std::vector<RatCell>(m[i].begin(), m[i].end());
  return bareiss_rank(std::move(cells));
}

std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> m,
                                                      std::size_t cols) {
  // Reduced row echelon form with exact arithmetic.
  std::vector<std::size_t> pivot_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = Rational(1) / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      Rational factor = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[row][j];
    }
    pivot_of_row.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_of_row) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = Rational(1);
    for (std::size_t r = 0; r < pivot_of_row.size(); ++r)
      v[pivot_of_row[r]] = -m[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> rational_solve(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col].is_zero()) ++sel;
    if (sel == n) throw NumericError("rational_solve: singular matrix");
    std::swap(a[col], a[sel]);
    std::swap(b[col], b[sel]);
    Rational inv = Rational(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Rational factor = a[i][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
      b[i] -= factor * b[col];
    }
  }
  return b;
}

Rational rationalize(double x, double rel_tol) {
  if (x == 0.0) return Rational(0);
  if (!std::isfinite(x)) throw NumericError("rationalize: non-finite input");
  bool neg = x < 0;
  double v = std::abs(x);
  // Scale into [1, 2) by a power of two so the continued fraction runs on a
  // well-conditioned mantissa; fold the exponent back at the end.
  int ex = 0;
  double m = std::frexp(v, &ex);  // v = m * 2^ex, m in [0.5, 1)
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = m;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    BigInt ai(static_cast<long long>(fl));
    BigInt p2 = ai * p1 + p0;
    BigInt q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational approx(p1, q1);
    if (std::abs(approx.to_double() - m) <= rel_tol * m) break;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1);
  if (ex > 0)
    r *= Rational(BigInt(1) << ex, BigInt(1));
  else if (ex < 0)
    r *= Rational(BigInt(1), BigInt(1) << (-ex));
  return neg ? -r : r;
}

}  // namespace mel
