#include <melnikov/melnikov.h>

#include <cstring>
#include <random>
#include <string>

#include <json.hpp>

#include "core/construct.hpp"
#include "core/error.hpp"
#include "core/expansion.hpp"
#include "core/melnikov.hpp"
#include "core/model.hpp"
#include "core/reproduce.hpp"
#include "core/simulate.hpp"
#include "core/zeros.hpp"

using json = nlohmann::ordered_json;

struct mel_spec {
  mel::PerturbationSpec v;
};
struct mel_closed_form {
  mel::ClosedForm v;
};

namespace {

thread_local std::string tl_error;

void set_error(const std::string& msg) { tl_error = msg; }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Run a callable, translating C++ exceptions to status codes.
template <typename F>
int32_t guarded(F&& f) {
  try {
    f();
    return MEL_OK;
  } catch (const mel::ParseError& e) {
    set_error(e.what());
    return MEL_ERR_PARSE;
  } catch (const mel::DomainError& e) {
    set_error(e.what());
    return MEL_ERR_DOMAIN;
  } catch (const mel::NumericError& e) {
    set_error(e.what());
    return MEL_ERR_NUMERIC;
  } catch (const mel::Error& e) {
    set_error(e.what());
    return MEL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MEL_ERR_INTERNAL;
  }
}

int32_t require(bool cond, const char* msg) {
  if (cond) return MEL_OK;
  set_error(msg);
  return MEL_ERR_INVALID_ARGUMENT;
}

mel::SimConfig sim_config_from_json(const json& j) {
  mel::SimConfig cfg;
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("step_tol")) cfg.step_tol = j["step_tol"].get<double>();
  if (j.contains("event_tol")) cfg.event_tol = j["event_tol"].get<double>();
  if (j.contains("max_crossings")) cfg.max_crossings = j["max_crossings"].get<int>();
  if (j.contains("fixed_step") && !j["fixed_step"].is_null())
    cfg.fixed_step = j["fixed_step"].get<double>();
  return cfg;
}

}  // namespace

extern "C" {

const char* mel_version(void) { return "0.1.0"; }

const char* mel_last_error(void) { return tl_error.c_str(); }

void mel_string_free(char* s) { delete[] s; }

int32_t mel_spec_parse(const char* json_text, mel_spec** out) {
  if (int rc = require(json_text && out, "mel_spec_parse: null argument")) return rc;
  return guarded([&] { *out = new mel_spec{mel::PerturbationSpec::from_json(json_text)}; });
}

int32_t mel_spec_to_json(const mel_spec* spec, char** out_json) {
  if (int rc = require(spec && out_json, "mel_spec_to_json: null argument")) return rc;
  return guarded([&] { *out_json = dup_string(spec->v.to_json()); });
}

int32_t mel_spec_degree(const mel_spec* spec, int32_t* out_n) {
  if (int rc = require(spec && out_n, "mel_spec_degree: null argument")) return rc;
  *out_n = spec->v.n;
  return MEL_OK;
}

void mel_spec_free(mel_spec* spec) { delete spec; }

int32_t mel_spec_random(int32_t n, uint64_t seed, mel_spec** out) {
  if (int rc = require(out != nullptr, "mel_spec_random: null output")) return rc;
  return guarded([&] {
    if (n < 1) throw mel::DomainError("mel_spec_random: n must be >= 1");
    std::mt19937_64 rng(seed);
    *out = new mel_spec{mel::random_spec(n, rng)};
  });
}

int32_t mel_closed_form_build(const mel_spec* spec, mel_closed_form** out) {
  if (int rc = require(spec && out, "mel_closed_form_build: null argument")) return rc;
  return guarded([&] { *out = new mel_closed_form{mel::closed_form(spec->v)}; });
}

int32_t mel_closed_form_to_json(const mel_closed_form* cf, char** out_json) {
  if (int rc = require(cf && out_json, "mel_closed_form_to_json: null argument")) return rc;
  return guarded([&] { *out_json = dup_string(cf->v.to_json()); });
}

void mel_closed_form_free(mel_closed_form* cf) { delete cf; }

int32_t mel_eval(const mel_closed_form* cf, double h, double* out_value) {
  if (int rc = require(cf && out_value, "mel_eval: null argument")) return rc;
  return guarded([&] { *out_value = mel::eval_melnikov(cf->v, h); });
}

int32_t mel_eval_oracle(const mel_spec* spec, double h, double abs_tol, double* out_value) {
  if (int rc = require(spec && out_value, "mel_eval_oracle: null argument")) return rc;
  return guarded([&] { *out_value = mel::quadrature_oracle(spec->v, h, abs_tol); });
}

int32_t mel_expand_homoclinic(const mel_closed_form* cf, int32_t order, char** out_json) {
  if (int rc = require(cf && out_json, "mel_expand_homoclinic: null argument")) return rc;
  return guarded([&] { *out_json = dup_string(mel::expand_homoclinic(cf->v, order).to_json()); });
}

int32_t mel_expand_hopf(const mel_closed_form* cf, int32_t order, char** out_json) {
  if (int rc = require(cf && out_json, "mel_expand_hopf: null argument")) return rc;
  return guarded([&] { *out_json = dup_string(mel::expand_hopf(cf->v, order).to_json()); });
}

int32_t mel_count_zeros(const mel_closed_form* cf, double h_min, double h_max, int32_t grid,
                        double tol, char** out_json) {
  if (int rc = require(cf && out_json, "mel_count_zeros: null argument")) return rc;
  return guarded(
      [&] { *out_json = dup_string(mel::count_zeros(cf->v, h_min, h_max, grid, tol).to_json()); });
}

int32_t mel_bound_certificate(const mel_closed_form* cf, char** out_json) {
  if (int rc = require(cf && out_json, "mel_bound_certificate: null argument")) return rc;
  return guarded([&] { *out_json = dup_string(mel::upper_bound_certificate(cf->v).to_json()); });
}

int32_t mel_zmax(int32_t n, int32_t* out_lower, int32_t* out_upper) {
  if (int rc = require(out_lower && out_upper, "mel_zmax: null argument")) return rc;
  return guarded([&] {
    mel::ZmaxBounds z = mel::zmax_table(n);
    *out_lower = z.lower;
    *out_upper = z.upper;
  });
}

int32_t mel_construct(const char* kind, int32_t n, const char* t_rational, char** out_json) {
  if (int rc = require(kind && t_rational && out_json, "mel_construct: null argument")) return rc;
  return guarded([&] {
    std::string k = kind;
    mel::ConstructKind ck;
    if (k == "hopf")
      ck = mel::ConstructKind::hopf;
    else if (k == "homoclinic")
      ck = mel::ConstructKind::homoclinic;
    else
      throw mel::DomainError("mel_construct: kind must be 'hopf' or 'homoclinic'");
    mel::Construction c = mel::construct(ck, n, mel::Rational::parse(t_rational));
    *out_json = dup_string(c.to_json());
  });
}

int32_t mel_rank_certificate(const char* which, int32_t n, const char* mu_variant,
                             char** out_json) {
  if (int rc = require(which && out_json, "mel_rank_certificate: null argument")) return rc;
  return guarded([&] {
    std::string w = which;
    mel::RankCertificate cert;
    if (w == "tilde-a1") {
      std::string v = mu_variant ? mu_variant : "taylor-mu";
      if (v != "paper-mu" && v != "taylor-mu")
        throw mel::DomainError("mu variant must be 'paper-mu' or 'taylor-mu'");
      cert = mel::tilde_a1(n, v == "paper-mu" ? mel::MuVariant::paper : mel::MuVariant::taylor);
    } else if (w == "appendix-n7") {
      cert = mel::appendix_matrix();
    } else if (w == "hopf-jacobian") {
      cert = mel::jacobian_rank(mel::ConstructKind::hopf, n);
    } else if (w == "homoclinic-jacobian") {
      cert = mel::jacobian_rank(mel::ConstructKind::homoclinic, n);
    } else {
      throw mel::DomainError("mel_rank_certificate: unknown certificate '" + w + "'");
    }
    *out_json = dup_string(cert.to_json());
  });
}

int32_t mel_simulate_cycles(const mel_spec* spec, const char* config_json, char** out_json) {
  if (int rc = require(spec && config_json && out_json, "mel_simulate_cycles: null argument"))
    return rc;
  return guarded([&] {
    json j;
    try {
      j = json::parse(config_json);
    } catch (const json::parse_error& e) {
      throw mel::ParseError(std::string("simulate config: ") + e.what());
    }
    mel::SimConfig cfg = sim_config_from_json(j);
    double h_min = j.value("h_min", 0.05);
    double h_max = j.value("h_max", 0.95);
    int grid = j.value("grid", 64);
    mel::CycleReport rep = mel::find_limit_cycles(spec->v, cfg, h_min, h_max, grid);
    *out_json = dup_string(rep.to_json());
  });
}

int32_t mel_return_map(const mel_spec* spec, const char* config_json, double y0, double* out_y1,
                       int32_t* out_crossings) {
  if (int rc = require(spec && config_json && out_y1 && out_crossings,
                       "mel_return_map: null argument"))
    return rc;
  return guarded([&] {
    json j;
    try {
      j = json::parse(config_json);
    } catch (const json::parse_error& e) {
      throw mel::ParseError(std::string("simulate config: ") + e.what());
    }
    mel::SectionResult r = mel::integrate_to_section(y0, spec->v, sim_config_from_json(j));
    *out_y1 = r.y1;
    *out_crossings = r.crossings;
  });
}

int32_t mel_trace_orbit(const mel_spec* spec, const char* config_json, double y0, char** out_csv) {
  if (int rc = require(spec && config_json && out_csv, "mel_trace_orbit: null argument")) return rc;
  return guarded([&] {
    json j;
    try {
      j = json::parse(config_json);
    } catch (const json::parse_error& e) {
      throw mel::ParseError(std::string("simulate config: ") + e.what());
    }
    std::vector<std::array<double, 3>> trace;
    mel::integrate_to_section(y0, spec->v, sim_config_from_json(j), &trace);
    std::string csv = "t,x,y\n";
    char line[96];
    for (const auto& p : trace) {
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
      csv += line;
    }
    *out_csv = dup_string(csv);
  });
}

int32_t mel_reproduce(const char* which, uint64_t seed, char** out_json, int32_t* out_ok) {
  if (int rc = require(which && out_json && out_ok, "mel_reproduce: null argument")) return rc;
  return guarded([&] {
    mel::ReproduceResult r = mel::reproduce(which, static_cast<unsigned>(seed));
    *out_json = dup_string(r.to_json());
    *out_ok = r.ok() ? 1 : 0;
  });
}

} /* extern "C" */
