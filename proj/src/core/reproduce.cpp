#include "core/reproduce.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "core/construct.hpp"
#include "core/error.hpp"
#include "core/zeros.hpp"

namespace mel {

using json = nlohmann::ordered_json;

bool ReproduceResult::ok() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string ReproduceResult::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"label", r.label}, {"detail", r.detail}, {"pass", r.pass}});
  json j;
  j["which"] = which;
  j["ok"] = ok();
  j["rows"] = rows_json;
  return j.dump();
}

std::string ReproduceResult::to_table() const {
  std::ostringstream os;
  os << "reproduce " << which << "\n";
  for (const auto& r : rows)
    os << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << r.label << ": " << r.detail << "\n";
  os << (ok() ? "all checks passed" : "FAILURES present") << "\n";
  return os.str();
}

namespace {

void push(ReproduceResult& res, const std::string& label, bool pass, const std::string& detail) {
  res.rows.push_back({label, detail, pass});
}

void run_constructions(ReproduceResult& res, int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    for (ConstructKind kind : {ConstructKind::hopf, ConstructKind::homoclinic}) {
      std::string label = std::string(construct_kind_name(kind)) + " n=" + std::to_string(n);
      try {
        Construction c = construct(kind, n, Rational(1, 5));
        bool pass = c.verification.count == c.predicted;
        push(res, label, pass,
             "predicted=" + std::to_string(c.predicted) +
                 " found=" + std::to_string(c.verification.count) + " (t=" + c.t_used.to_string() +
                 ")");
      } catch (const Error& e) {
        push(res, label, false, e.what());
      }
    }
  }
}

}  // namespace

ReproduceResult reproduce(const std::string& which, unsigned seed) {
  ReproduceResult res;
  res.which = which;

  if (which == "1.1") {
    run_constructions(res, 4);
    for (int n = 1; n <= 8; ++n) {
      RankCertificate c = jacobian_rank(ConstructKind::hopf, n);
      push(res, "hopf jacobian n=" + std::to_string(n), c.ok(),
           "rank=" + std::to_string(c.rank) + " expected=" + std::to_string(c.expected));
    }
    for (int n = 1; n <= 8; ++n) {
      RankCertificate c = jacobian_rank(ConstructKind::homoclinic, n);
      push(res, "homoclinic jacobian n=" + std::to_string(n), c.ok(),
           "rank=" + std::to_string(c.rank) + " expected=" + std::to_string(c.expected));
    }
    return res;
  }

  if (which == "1.2") {
    run_constructions(res, 4);
    std::mt19937_64 rng(seed);
    for (int n = 1; n <= 4; ++n) {
      int cap = zmax_table(n).upper;
      int worst = 0;
      bool pass = true;
      for (int trial = 0; trial < 1000; ++trial) {
        PerturbationSpec s = random_spec(n, rng);
        ZeroReport r = count_zeros(closed_form(s), 0.001, 0.999, 512, 1e-11);
        worst = std::max(worst, r.count);
        if (r.count > cap) pass = false;
      }
      push(res, "random sweep n=" + std::to_string(n), pass,
           "1000 specs, max count=" + std::to_string(worst) + " <= Z(n)=" + std::to_string(cap));
    }
    return res;
  }

  if (which == "1.3") {
    std::mt19937_64 rng(seed);
    for (int n : {5, 6}) {
      int cap = 2 * n + (n + 1) / 2;
      bool pass = true;
      int worst_count = 0, worst_bound = 0;
      for (int trial = 0; trial < 200; ++trial) {
        PerturbationSpec s = random_spec(n, rng);
        ClosedForm cf = closed_form(s);
        Poly theta = theta_poly(cf);
        if (theta.degree() > 2 * n) pass = false;
        BoundCertificate cert = upper_bound_certificate(cf);
        ZeroReport r = count_zeros(cf, 0.001, 0.999, 512, 1e-11);
        worst_count = std::max(worst_count, r.count);
        worst_bound = std::max(worst_bound, cert.bound);
        if (r.count > cert.bound || cert.bound > cap) pass = false;
      }
      push(res, "theta bound n=" + std::to_string(n), pass,
           "200 specs, max count=" + std::to_string(worst_count) +
               ", max bound=" + std::to_string(worst_bound) + " <= " + std::to_string(cap));
    }
    return res;
  }

  if (which == "appendix") {
    for (int n = 1; n <= 15; n += 2) {
      for (MuVariant v : {MuVariant::paper, MuVariant::taylor}) {
        RankCertificate c = tilde_a1(n, v);
        push(res,
             "tilde_a1 n=" + std::to_string(n) +
                 (v == MuVariant::paper ? " (paper mu)" : " (taylor mu)"),
             c.ok(), "rank=" + std::to_string(c.rank) + " expected=" + std::to_string(c.expected));
      }
    }
    RankCertificate ap = appendix_matrix();
    bool entry_ok = ap.matrix[0][0] == SymScalar(Rational(-15, 16)) &&
                    ap.matrix[0][3] == SymScalar(Rational(-1, 2)) &&
                    ap.matrix[3][0] == SymScalar(Rational(-10395, 128));
    push(res, "worked n=7 example", ap.ok() && entry_ok,
         "rank=" + std::to_string(ap.rank) + ", entries -5!!/2^4, -1/2, -11!!/2^7 verified");
    return res;
  }

  throw DomainError("unknown reproduce target '" + which + "' (use 1.1, 1.2, 1.3, appendix)");
}

}  // namespace mel
