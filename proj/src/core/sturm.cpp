#include "core/sturm.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace mel {

namespace {

double max_abs(const std::vector<double>& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

double eval_at(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Synthetic division by (x - r); remainder discarded (caller knows r is a root).
std::vector<double> deflate_root(const std::vector<double>& c, double r) {
  std::vector<double> q(c.size() - 1);
  double carry = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = c[i] + carry * r;
  }
  return q;
}

int sign_of(double v, double tol) {
  if (std::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

int variations(const std::vector<std::vector<double>>& chain, double x, double tol_scale) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(eval_at(p, x), 1e-12 * tol_scale);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int sturm_count_open01(std::vector<double> coeffs) {
  double scale = max_abs(coeffs);
  if (scale == 0.0) return 0;  // zero polynomial: no isolated roots
  // Trim negligible leading coefficients; a genuinely vanishing leading
  // coefficient after projection is the degeneracy the exact path handles.
  double lead_tol = 1e-13 * scale;
  while (!coeffs.empty() && std::abs(coeffs.back()) <= lead_tol) coeffs.pop_back();
  if (coeffs.empty())
    throw NumericError("sturm: degenerate projection (all coefficients at noise level)");
  if (coeffs.size() == 1) return 0;

  // Deflate roots at 0 and 1 (open-interval convention excludes them).
  while (!coeffs.empty() && std::abs(coeffs.front()) <= 1e-13 * max_abs(coeffs))
    coeffs.erase(coeffs.begin());
  if (coeffs.size() <= 1) return 0;
  while (coeffs.size() > 1 && std::abs(eval_at(coeffs, 1.0)) <= 1e-12 * max_abs(coeffs))
    coeffs = deflate_root(coeffs, 1.0);
  if (coeffs.size() <= 1) return 0;

  // Sturm chain with per-step normalization to unit max-abs.
  std::vector<std::vector<double>> chain;
  auto normalize = [](std::vector<double> p) {
    double m = max_abs(p);
    if (m > 0)
      for (double& v : p) v /= m;
    return p;
  };
  chain.push_back(normalize(coeffs));
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
  chain.push_back(normalize(d));

  while (chain.back().size() > 1) {
    const std::vector<double>& a = chain[chain.size() - 2];
    const std::vector<double>& b = chain.back();
    // rem = a mod b, negated.
    std::vector<double> r = a;
    while (r.size() >= b.size()) {
      double q = r.back() / b.back();
      std::size_t off = r.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= q * b[i];
      r.pop_back();
      while (!r.empty() && std::abs(r.back()) <= 1e-14 * max_abs(r)) r.pop_back();
      if (r.size() < b.size()) break;
    }
    if (r.empty() || max_abs(r) <= 1e-13) break;
    for (double& v : r) v = -v;
    chain.push_back(normalize(r));
    if (chain.size() > coeffs.size() + 2) throw NumericError("sturm: chain failed to shrink");
  }

  int v0 = variations(chain, 0.0, 1.0);
  int v1 = variations(chain, 1.0, 1.0);
  return std::max(0, v0 - v1);
}

namespace {

Rational eval_rat(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Divide out integer content to keep coefficient growth in check.
void reduce_content(std::vector<Rational>& c) {
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& v : c) {
    num_gcd = boost::multiprecision::gcd(num_gcd, v.numerator() < 0 ? BigInt(-v.numerator())
                                                                    : v.numerator());
    den_lcm = boost::multiprecision::lcm(den_lcm, v.denominator());
  }
  if (num_gcd == 0) return;
  Rational scale(den_lcm, num_gcd);
  for (auto& v : c) v *= scale;
}

std::vector<Rational> deflate_root_exact(const std::vector<Rational>& c, const Rational& r) {
  std::vector<Rational> q(c.size() - 1);
  Rational carry = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = c[i] + carry * r;
  }
  return q;
}

}  // namespace

int sturm_count_open01_exact(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() <= 1) return 0;
  while (!coeffs.empty() && coeffs.front().is_zero()) coeffs.erase(coeffs.begin());
  if (coeffs.size() <= 1) return 0;
  while (coeffs.size() > 1 && eval_rat(coeffs, Rational(1)).is_zero())
    coeffs = deflate_root_exact(coeffs, Rational(1));
  if (coeffs.size() <= 1) return 0;

  std::vector<std::vector<Rational>> chain;
  reduce_content(coeffs);
  chain.push_back(coeffs);
  std::vector<Rational> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d[i - 1] = coeffs[i] * Rational(static_cast<std::int64_t>(i));
  reduce_content(d);
  chain.push_back(d);

  while (chain.back().size() > 1) {
    const std::vector<Rational>& a = chain[chain.size() - 2];
    const std::vector<Rational>& b = chain.back();
    std::vector<Rational> r = a;
    while (r.size() >= b.size()) {
      Rational q = r.back() / b.back();
      std::size_t off = r.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= q * b[i];
      r.pop_back();
      while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    if (r.empty()) break;
    for (auto& v : r) v = -v;
    reduce_content(r);
    chain.push_back(std::move(r));
  }

  auto variations_exact = [&chain](const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
      int s = eval_rat(p, x).sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
    return var;
  };
  return std::max(0, variations_exact(Rational(0)) - variations_exact(Rational(1)));
}

}  // namespace mel
