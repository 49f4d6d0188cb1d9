#include "core/rational.hpp"

#include <cctype>
#include <ostream>

#include "core/error.hpp"

namespace mel {

Rational::Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw RingError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  v_ = boost::multiprecision::cpp_rational(std::move(num), std::move(den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw RingError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  // Strip surrounding whitespace.
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty rational");
  std::string s = text.substr(b, e - b + 1);

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      throw ParseError("bad rational '" + text + "'");
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    // Decimal literal, converted exactly: d.ddd -> integer / 10^k.
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    if (!is_integer_token(head) || (!tail.empty() && !is_integer_token(tail)))
      throw ParseError("bad rational '" + text + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    BigInt whole(head);
    BigInt frac = tail.empty() ? BigInt(0) : BigInt(tail);
    if (whole < 0 || head[0] == '-') return Rational(whole * scale - frac, scale);
    return Rational(whole * scale + frac, scale);
  }

  if (!is_integer_token(s)) throw ParseError("bad rational '" + text + "'");
  return Rational(BigInt(s), BigInt(1));
}

std::string Rational::to_string() const {
  std::string s = numerator().str();
  if (!is_integer()) s += "/" + denominator().str();
  return s;
}

Rational Rational::binomial(const Rational& p, unsigned k) {
  Rational r = 1;
  for (unsigned t = 0; t < k; ++t) r *= (p - Rational(static_cast<std::int64_t>(t)));
  return r / Rational(factorial(k), 1);
}

BigInt Rational::factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt Rational::double_factorial(int n) {
  if (n <= 0) return 1;
  BigInt r = 1;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigInt Rational::binomial_int(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned t = 0; t < k; ++t) {
    r *= (n - t);
    r /= (t + 1);  // exact at each step
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace mel
