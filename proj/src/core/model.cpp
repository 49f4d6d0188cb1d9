#include "core/model.hpp"

#include <cmath>

#include <json.hpp>

#include "core/error.hpp"

namespace mel {

using json = nlohmann::ordered_json;

void PerturbationSpec::validate() const {
  if (n < 1) throw ParseError("degree n must be >= 1");
  auto check = [this](const CoeffMap& m, const char* name) {
    for (const auto& [ij, c] : m) {
      (void)c;
      if (ij.first < 0 || ij.second < 0 || ij.first + ij.second > n)
        throw ParseError(std::string("coefficient index out of range in ") + name + ": (" +
                         std::to_string(ij.first) + "," + std::to_string(ij.second) + ") with n=" +
                         std::to_string(n));
    }
  };
  check(a_plus, "plus.p");
  check(b_plus, "plus.q");
  check(a_minus, "minus.p");
  check(b_minus, "minus.q");
}

Rational PerturbationSpec::get(const CoeffMap& m, int i, int j) const {
  auto it = m.find({i, j});
  return it == m.end() ? Rational(0) : it->second;
}

bool PerturbationSpec::is_zero() const {
  for (const CoeffMap* m : {&a_plus, &b_plus, &a_minus, &b_minus})
    for (const auto& [ij, c] : *m) {
      (void)ij;
      if (!c.is_zero()) return false;
    }
  return true;
}

namespace {

CoeffMap coeffs_from_json(const json& j, const std::string& where) {
  CoeffMap m;
  if (!j.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [key, val] : j.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw ParseError("bad index key '" + key + "' in " + where);
    int i = 0, jj = 0;
    try {
      i = std::stoi(key.substr(0, comma));
      jj = std::stoi(key.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("bad index key '" + key + "' in " + where);
    }
    Rational r;
    if (val.is_string()) {
      r = Rational::parse(val.get<std::string>());
    } else if (val.is_number_integer()) {
      r = Rational(val.get<std::int64_t>());
    } else {
      throw ParseError("coefficient at '" + key + "' in " + where +
                       " must be a rational string or integer");
    }
    if (!r.is_zero()) m[{i, jj}] = r;
  }
  return m;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, val] : j.items()) {
    (void)val;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

json coeffs_to_json(const CoeffMap& m) {
  json out = json::object();
  for (const auto& [ij, c] : m) {
    if (c.is_zero()) continue;
    out[std::to_string(ij.first) + "," + std::to_string(ij.second)] = c.to_string();
  }
  return out;
}

}  // namespace

PerturbationSpec PerturbationSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  reject_unknown(j, {"n", "plus", "minus"}, "spec");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("spec needs integer 'n'");

  PerturbationSpec s;
  s.n = j["n"].get<int>();
  for (const char* side : {"plus", "minus"}) {
    if (!j.contains(side)) continue;
    const json& sj = j[side];
    if (!sj.is_object()) throw ParseError(std::string(side) + " must be an object");
    reject_unknown(sj, {"p", "q"}, side);
    CoeffMap& a = (std::string(side) == "plus") ? s.a_plus : s.a_minus;
    CoeffMap& b = (std::string(side) == "plus") ? s.b_plus : s.b_minus;
    if (sj.contains("p")) a = coeffs_from_json(sj["p"], std::string(side) + ".p");
    if (sj.contains("q")) b = coeffs_from_json(sj["q"], std::string(side) + ".q");
  }
  s.validate();
  return s;
}

std::string PerturbationSpec::to_json() const {
  json j;
  j["n"] = n;
  j["plus"] = {{"p", coeffs_to_json(a_plus)}, {"q", coeffs_to_json(b_plus)}};
  j["minus"] = {{"p", coeffs_to_json(a_minus)}, {"q", coeffs_to_json(b_minus)}};
  return j.dump();
}

PerturbationSpec PerturbationSpec::linear(const Rational& alpha, const PerturbationSpec& a,
                                          const Rational& beta, const PerturbationSpec& b) {
  if (a.n != b.n) throw RingError("linear combination of specs with different degree");
  PerturbationSpec out;
  out.n = a.n;
  auto fold = [&](const CoeffMap& ma, const CoeffMap& mb, CoeffMap& mo) {
    for (const auto& [ij, c] : ma) mo[ij] += alpha * c;
    for (const auto& [ij, c] : mb) mo[ij] += beta * c;
    for (auto it = mo.begin(); it != mo.end();)
      it = it->second.is_zero() ? mo.erase(it) : std::next(it);
  };
  fold(a.a_plus, b.a_plus, out.a_plus);
  fold(a.b_plus, b.b_plus, out.b_plus);
  fold(a.a_minus, b.a_minus, out.a_minus);
  fold(a.b_minus, b.b_minus, out.b_minus);
  return out;
}

double UnperturbedGeometry::section_a(double h) { return -std::sqrt(1.0 - h); }
double UnperturbedGeometry::section_a1(double h) { return std::sqrt(1.0 - h); }

SymScalar wallis(int i, int j) {
  if (i < 0 || j < 0) throw DomainError("wallis indices must be nonnegative");
  if (j % 2 == 1) return SymScalar(0);
  if (j >= 2) {
    // Gamma_{i,j} = (j-1)/(i+j) * Gamma_{i,j-2}
    return wallis(i, j - 2) * SymScalar(Rational(j - 1, i + j));
  }
  if (i >= 2) {
    // Gamma_{i,0} = (i-1)/i * Gamma_{i-2,0}
    return wallis(i - 2, 0) * SymScalar(Rational(i - 1, i));
  }
  if (i == 0) return SymScalar::pi();  // Gamma_00 = pi
  return SymScalar(2);                 // Gamma_10 = 2
}

WallisTable::WallisTable(int max_total) : max_total_(max_total) {
  g_.resize(max_total + 1);
  for (int i = 0; i <= max_total; ++i) {
    g_[i].resize(max_total - i + 1);
    for (int j = 0; i + j <= max_total; ++j) g_[i][j] = wallis(i, j);
  }
}

const SymScalar& WallisTable::gamma(int i, int j) const {
  if (i < 0 || j < 0 || i + j > max_total_) throw DomainError("WallisTable index out of range");
  return g_[i][j];
}

SymScalar WallisTable::ibar(int i, int j) const {
  SymScalar g = gamma(i, j);
  return ((i + j) % 2 == 1) ? -g : g;
}

Rational ReducedPlus::get(int i, int j) const {
  auto it = p.find({i, j});
  return it == p.end() ? Rational(0) : it->second;
}

ReducedPlus reduce_plus(const PerturbationSpec& spec) {
  ReducedPlus out;
  out.n = spec.n;
  // p^+_{ij} = a^+_{i+1,j} + (j+1)/(i+1) * b^+_{i,j+1}
  for (int i = 0; i + 1 <= spec.n; ++i) {
    for (int j = 0; i + j <= spec.n - 1; ++j) {
      Rational v = spec.get(spec.a_plus, i + 1, j) +
                   Rational(j + 1, i + 1) * spec.get(spec.b_plus, i, j + 1);
      if (!v.is_zero()) out.p[{i, j}] = v;
    }
  }
  return out;
}

PerturbationSpec random_spec(int n, std::mt19937_64& rng, int max_abs_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
  std::uniform_int_distribution<int> den(1, max_den);
  PerturbationSpec s;
  s.n = n;
  for (CoeffMap* m : {&s.a_plus, &s.b_plus, &s.a_minus, &s.b_minus})
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        Rational r(num(rng), den(rng));
        if (!r.is_zero()) (*m)[{i, j}] = r;
      }
  return s;
}

LeftMoments left_moments(const PerturbationSpec& spec, const WallisTable& table) {
  if (table.max_total() < spec.n + 1) throw DomainError("WallisTable too small for left_moments");
  LeftMoments out;
  out.e.resize(spec.n + 1);
  for (int l = 0; l <= spec.n; ++l) {
    SymScalar acc;
    for (int j = 0; j <= l; ++j) {
      if (j % 2 == 0) {
        Rational a = spec.get(spec.a_minus, l - j, j);
        if (!a.is_zero()) acc += table.gamma(l - j + 1, j) * SymScalar(a);
      } else {
        Rational b = spec.get(spec.b_minus, l - j, j);
        if (!b.is_zero()) acc += table.gamma(l - j, j + 1) * SymScalar(b);
      }
    }
    out.e[l] = (l % 2 == 0) ? -acc : acc;  // (-1)^{l+1}
  }
  return out;
}

}  // namespace mel
