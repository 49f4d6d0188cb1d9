#include "core/ringpoly.hpp"

#include "core/error.hpp"

namespace mel {

RingPoly RingPoly::from(const SymScalar& s) {
  RingPoly p;
  if (!s.rat().is_zero()) p.t_[{0, 0}] = s.rat();
  if (!s.pi_coeff().is_zero()) p.t_[{1, 0}] = s.pi_coeff();
  if (!s.ln2_coeff().is_zero()) p.t_[{0, 1}] = s.ln2_coeff();
  return p;
}

RingPoly RingPoly::operator-() const {
  RingPoly r;
  for (const auto& [m, c] : t_) r.t_[m] = -c;
  return r;
}

RingPoly& RingPoly::operator+=(const RingPoly& o) {
  for (const auto& [m, c] : o.t_) {
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  return *this;
}

RingPoly& RingPoly::operator-=(const RingPoly& o) {
  for (const auto& [m, c] : o.t_) {
    auto [it, inserted] = t_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  return *this;
}

RingPoly operator*(const RingPoly& a, const RingPoly& b) {
  RingPoly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      std::pair<int, int> m{ma.first + mb.first, ma.second + mb.second};
      auto [it, inserted] = r.t_.try_emplace(m, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second.is_zero()) r.t_.erase(it);
      }
    }
  return r;
}

RingPoly RingPoly::divide_exact(const RingPoly& d) const {
  if (d.is_zero()) throw RingError("ring polynomial division by zero");
  // Reduce by the divisor's lex-leading term; for exact quotients every step
  // divides (lead(remainder) = lead(quotient tail) * lead(d)).
  auto lead_d = d.t_.rbegin();
  RingPoly rem = *this;
  RingPoly quot;
  while (!rem.t_.empty()) {
    auto lead_r = rem.t_.rbegin();
    int dx = lead_r->first.first - lead_d->first.first;
    int dy = lead_r->first.second - lead_d->first.second;
    if (dx < 0 || dy < 0) throw RingError("inexact ring polynomial division");
    RingPoly term;
    term.t_[{dx, dy}] = lead_r->second / lead_d->second;
    quot += term;
    rem -= term * d;
  }
  return quot;
}

std::string RingPoly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : t_) {
    if (!s.empty()) s += " + ";
    s += c.to_string();
    if (m.first > 0) s += "*pi" + (m.first > 1 ? "^" + std::to_string(m.first) : "");
    if (m.second > 0) s += "*ln2" + (m.second > 1 ? "^" + std::to_string(m.second) : "");
  }
  return s;
}

}  // namespace mel
