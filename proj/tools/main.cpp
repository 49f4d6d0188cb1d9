// Command-line front end for the melnikov shared library.  Machine-readable
// results (JSON/CSV) go to stdout or --out files; human summaries to stderr.
// Exit codes: 0 ok, 1 assertion failure, 2 input error, 3 numeric failure.

#include <melnikov/melnikov.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(int32_t status) {
  switch (status) {
    case MEL_OK: return kExitOk;
    case MEL_ERR_INVALID_ARGUMENT:
    case MEL_ERR_PARSE:
    case MEL_ERR_DOMAIN: return kExitInput;
    default: return kExitNumeric;
  }
}

[[noreturn]] void fail(int32_t status) {
  std::cerr << "error: " << mel_last_error() << "\n";
  std::exit(exit_code_for(status));
}

void check(int32_t status) {
  if (status != MEL_OK) fail(status);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  mel_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    std::exit(kExitInput);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SpecHandle {
  mel_spec* p = nullptr;
  ~SpecHandle() { mel_spec_free(p); }
};
struct CfHandle {
  mel_closed_form* p = nullptr;
  ~CfHandle() { mel_closed_form_free(p); }
};

void load_spec(const std::string& config_path, SpecHandle& spec) {
  check(mel_spec_parse(read_file(config_path).c_str(), &spec.p));
}

double parse_number(const std::string& text) {
  // Accept plain decimals and rational strings like "1/3".
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    std::cerr << "error: bad numeric value '" << text << "'\n";
    std::exit(kExitInput);
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Every command that writes files also drops a manifest next to them.
struct Manifest {
  std::string command;
  std::string config_path;
  std::optional<long long> seed;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& out_dir) const {
    json j;
    j["command"] = command;
    j["config_path"] = config_path;
    if (seed)
      j["seed"] = *seed;
    else
      j["seed"] = nullptr;
    j["outputs"] = outputs;
    j["tool_version"] = mel_version();
    j["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(out_dir / "manifest.json", std::ios::binary);
    f << j.dump(2) << "\n";
  }
};

void write_text(const fs::path& path, const std::string& text, Manifest& manifest) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << path.string() << "'\n";
    std::exit(kExitInput);
  }
  f << text;
  manifest.outputs.push_back(path.string());
}

json sim_config_json(double epsilon, double step_tol, double event_tol,
                     std::optional<double> fixed_step) {
  json cfg;
  cfg["epsilon"] = epsilon;
  cfg["step_tol"] = step_tol;
  cfg["event_tol"] = event_tol;
  if (fixed_step) cfg["fixed_step"] = *fixed_step;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order Melnikov analysis of a piecewise linear system "
               "with a homoclinic loop"};
  app.set_help_flag("--help", "print usage");  // long-form flags only; frees --h
  app.require_subcommand(1);

  // closed-form ------------------------------------------------------------
  std::string cf_config, cf_out;
  int cf_sample = 0;
  double cf_tol = 1e-12;
  int cf_jobs = 1;
  auto* cmd_cf = app.add_subcommand("closed-form", "exact (f, g) pair of Mbar, optional CSV sweep");
  cmd_cf->add_option("--config", cf_config, "spec JSON path")->required();
  cmd_cf->add_option("--sample", cf_sample, "CSV sample count over h in [0.02, 0.98]");
  cmd_cf->add_option("--out", cf_out, "output directory (required with --sample)");
  cmd_cf->add_option("--tol", cf_tol, "oracle absolute tolerance");
  cmd_cf->add_option("--jobs", cf_jobs, "worker threads for the sweep");

  // eval ---------------------------------------------------------------------
  std::string ev_config, ev_h;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate Mbar(h)");
  cmd_eval->set_help_flag("--help", "print usage");
  cmd_eval->add_option("--config", ev_config, "spec JSON path")->required();
  cmd_eval->add_option("--h", ev_h, "level in (0,1); accepts rational strings")->required();

  // zeros ---------------------------------------------------------------------
  std::string z_config, z_out;
  double z_hmin = 0.001, z_hmax = 0.999, z_tol = 1e-12;
  int z_grid = 4096;
  auto* cmd_zeros = app.add_subcommand("zeros", "count and isolate zeros of Mbar");
  cmd_zeros->add_option("--config", z_config, "spec JSON path")->required();
  cmd_zeros->add_option("--h-min", z_hmin, "scan lower bound");
  cmd_zeros->add_option("--h-max", z_hmax, "scan upper bound");
  cmd_zeros->add_option("--grid", z_grid, "uniform grid points");
  cmd_zeros->add_option("--tol", z_tol, "bracket width tolerance in lambda");
  cmd_zeros->add_option("--out", z_out, "output directory");

  // expand ---------------------------------------------------------------------
  std::string x_config, x_side = "homoclinic";
  int x_order = 6;
  auto* cmd_expand = app.add_subcommand("expand", "endpoint expansion of Mbar");
  cmd_expand->add_option("--config", x_config, "spec JSON path")->required();
  cmd_expand->add_option("--side", x_side, "homoclinic (h=0) or hopf (h=1)")
      ->check(CLI::IsMember({"homoclinic", "hopf"}));
  cmd_expand->add_option("--order", x_order, "truncation order");

  // construct ---------------------------------------------------------------------
  std::string c_kind = "hopf", c_t = "1/20", c_out;
  int c_n = 1;
  auto* cmd_construct =
      app.add_subcommand("construct", "perturbation with the maximal endpoint zero ladder");
  cmd_construct->add_option("--kind", c_kind, "hopf or homoclinic")
      ->check(CLI::IsMember({"hopf", "homoclinic"}));
  cmd_construct->add_option("--n", c_n, "perturbation degree")->required();
  cmd_construct->add_option("--t", c_t, "ladder scale in (0, 1/5], rational");
  cmd_construct->add_option("--out", c_out, "output directory");

  // rank ---------------------------------------------------------------------
  std::string r_which = "tilde-a1", r_variant = "taylor-mu";
  int r_n = 7;
  auto* cmd_rank = app.add_subcommand("rank", "exact rank certificates");
  cmd_rank->add_option("--which", r_which, "tilde-a1 | appendix-n7 | hopf-jacobian | homoclinic-jacobian")
      ->check(CLI::IsMember({"tilde-a1", "appendix-n7", "hopf-jacobian", "homoclinic-jacobian"}));
  cmd_rank->add_option("--n", r_n, "matrix size parameter");
  cmd_rank->add_option("--variant", r_variant, "mu ladder for tilde-a1")
      ->check(CLI::IsMember({"paper-mu", "taylor-mu"}));

  // simulate ---------------------------------------------------------------------
  std::string s_config, s_out;
  double s_eps = 1e-3, s_hmin = 0.05, s_hmax = 0.95, s_step_tol = 1e-10, s_event_tol = 1e-12;
  int s_grid = 64;
  long long s_seed = 0;
  bool s_trace = false;
  std::optional<double> s_fixed;
  double s_fixed_raw = 0.0;
  auto* cmd_sim = app.add_subcommand("simulate", "return-map limit cycle search");
  cmd_sim->add_option("--config", s_config, "spec JSON path")->required();
  cmd_sim->add_option("--epsilon", s_eps, "perturbation size (<= 0.05)");
  cmd_sim->add_option("--h-min", s_hmin, "scan lower bound");
  cmd_sim->add_option("--h-max", s_hmax, "scan upper bound");
  cmd_sim->add_option("--grid", s_grid, "displacement grid");
  cmd_sim->add_option("--seed", s_seed, "recorded in the manifest");
  auto* fixed_opt = cmd_sim->add_option("--fixed-step", s_fixed_raw,
                                        "classical RK4 with this step (reproducibility mode)");
  cmd_sim->add_flag("--trace", s_trace, "write per-cycle orbit traces (needs --out)");
  cmd_sim->add_option("--out", s_out, "output directory");

  // reproduce ---------------------------------------------------------------------
  std::string rep_which;
  long long rep_seed = 20240801;
  auto* cmd_rep = app.add_subcommand("reproduce", "rerun a headline-result suite");
  cmd_rep->add_option("target", rep_which, "1.1 | 1.2 | 1.3 | appendix")->required();
  cmd_rep->add_option("--seed", rep_seed, "sweep seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  if (cmd_cf->parsed()) {
    Manifest manifest{"closed-form", cf_config, std::nullopt, {}};
    SpecHandle spec;
    load_spec(cf_config, spec);
    CfHandle cf;
    check(mel_closed_form_build(spec.p, &cf.p));
    char* cf_json = nullptr;
    check(mel_closed_form_to_json(cf.p, &cf_json));
    std::string cf_text = take_string(cf_json);
    std::cout << cf_text << "\n";

    if (cf_sample > 0) {
      if (cf_out.empty()) {
        std::cerr << "error: --sample requires --out\n";
        return kExitInput;
      }
      if (cf_sample < 2) {
        std::cerr << "error: --sample needs at least 2 points\n";
        return kExitInput;
      }
      std::vector<std::string> rows(cf_sample);
      std::vector<int32_t> status(cf_sample, MEL_OK);
      int jobs = std::max(1, cf_jobs);
      auto worker = [&](int tid) {
        for (int i = tid; i < cf_sample; i += jobs) {
          double h = 0.02 + (0.98 - 0.02) * i / (cf_sample - 1);
          double v = 0, o = 0;
          int32_t rc = mel_eval(cf.p, h, &v);
          if (rc == MEL_OK) rc = mel_eval_oracle(spec.p, h, cf_tol, &o);
          status[i] = rc;
          if (rc == MEL_OK)
            rows[i] = fmt17(h) + "," + fmt17(v) + "," + fmt17(o) + "," + fmt17(std::abs(v - o));
        }
      };
      std::vector<std::thread> pool;
      for (int tIdx = 1; tIdx < jobs; ++tIdx) pool.emplace_back(worker, tIdx);
      worker(0);
      for (auto& th : pool) th.join();
      for (int32_t rc : status)
        if (rc != MEL_OK) fail(rc);
      std::string csv = "h,melnikov_closed_form,melnikov_oracle,abs_diff\n";
      for (const auto& r : rows) csv += r + "\n";
      fs::create_directories(cf_out);
      write_text(fs::path(cf_out) / "sample.csv", csv, manifest);
      write_text(fs::path(cf_out) / "closed_form.json", cf_text + "\n", manifest);
      manifest.write(cf_out);
    }
    return kExitOk;
  }

  if (cmd_eval->parsed()) {
    SpecHandle spec;
    load_spec(ev_config, spec);
    CfHandle cf;
    check(mel_closed_form_build(spec.p, &cf.p));
    double h = parse_number(ev_h), v = 0;
    check(mel_eval(cf.p, h, &v));
    json j;
    j["h"] = h;
    j["value"] = v;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }

  if (cmd_zeros->parsed()) {
    Manifest manifest{"zeros", z_config, std::nullopt, {}};
    SpecHandle spec;
    load_spec(z_config, spec);
    CfHandle cf;
    check(mel_closed_form_build(spec.p, &cf.p));
    char* out = nullptr;
    check(mel_count_zeros(cf.p, z_hmin, z_hmax, z_grid, z_tol, &out));
    std::string text = take_string(out);
    std::cout << text << "\n";
    if (!z_out.empty()) {
      fs::create_directories(z_out);
      write_text(fs::path(z_out) / "zeros.json", text + "\n", manifest);
      manifest.write(z_out);
    }
    return kExitOk;
  }

  if (cmd_expand->parsed()) {
    SpecHandle spec;
    load_spec(x_config, spec);
    CfHandle cf;
    check(mel_closed_form_build(spec.p, &cf.p));
    char* out = nullptr;
    check(x_side == "hopf" ? mel_expand_hopf(cf.p, x_order, &out)
                           : mel_expand_homoclinic(cf.p, x_order, &out));
    std::cout << take_string(out) << "\n";
    return kExitOk;
  }

  if (cmd_construct->parsed()) {
    Manifest manifest{"construct", "", std::nullopt, {}};
    char* out = nullptr;
    check(mel_construct(c_kind.c_str(), c_n, c_t.c_str(), &out));
    std::string text = take_string(out);
    std::cout << text << "\n";
    if (!c_out.empty()) {
      fs::create_directories(c_out);
      json parsed = json::parse(text);
      write_text(fs::path(c_out) / "construction.json", text + "\n", manifest);
      write_text(fs::path(c_out) / "spec.json", parsed["spec"].dump() + "\n", manifest);
      write_text(fs::path(c_out) / "ledger.json", parsed["ledger"].dump() + "\n", manifest);
      manifest.write(c_out);
    }
    return kExitOk;
  }

  if (cmd_rank->parsed()) {
    char* out = nullptr;
    check(mel_rank_certificate(r_which.c_str(), r_n, r_variant.c_str(), &out));
    std::string text = take_string(out);
    std::cout << text << "\n";
    json parsed = json::parse(text);
    if (!parsed["ok"].get<bool>()) {
      std::cerr << "rank certificate failed: rank " << parsed["rank"] << " != expected "
                << parsed["expected"] << "\n";
      return kExitAssertion;
    }
    return kExitOk;
  }

  if (cmd_sim->parsed()) {
    Manifest manifest{"simulate", s_config, s_seed, {}};
    if (fixed_opt->count() > 0) s_fixed = s_fixed_raw;
    SpecHandle spec;
    load_spec(s_config, spec);
    json cfg = sim_config_json(s_eps, s_step_tol, s_event_tol, s_fixed);
    cfg["h_min"] = s_hmin;
    cfg["h_max"] = s_hmax;
    cfg["grid"] = s_grid;
    char* out = nullptr;
    check(mel_simulate_cycles(spec.p, cfg.dump().c_str(), &out));
    std::string text = take_string(out);
    std::cout << text << "\n";
    if (!s_out.empty()) {
      fs::create_directories(s_out);
      write_text(fs::path(s_out) / "cycles.json", text + "\n", manifest);
      if (s_trace) {
        json parsed = json::parse(text);
        int k = 0;
        for (const auto& fp : parsed["fixed_points"]) {
          double y0 = fp["y_section"].get<double>();
          char* csv = nullptr;
          check(mel_trace_orbit(spec.p, cfg.dump().c_str(), y0, &csv));
          write_text(fs::path(s_out) / ("trace_" + std::to_string(k++) + ".csv"),
                     take_string(csv), manifest);
        }
      }
      manifest.write(s_out);
    }
    return kExitOk;
  }

  if (cmd_rep->parsed()) {
    char* out = nullptr;
    int32_t ok = 0;
    check(mel_reproduce(rep_which.c_str(), static_cast<uint64_t>(rep_seed), &out, &ok));
    std::string text = take_string(out);
    std::cout << text << "\n";
    json parsed = json::parse(text);
    std::cerr << "reproduce " << rep_which << "\n";
    for (const auto& row : parsed["rows"])
      std::cerr << "  [" << (row["pass"].get<bool>() ? "PASS" : "FAIL") << "] "
                << row["label"].get<std::string>() << ": " << row["detail"].get<std::string>()
                << "\n";
    if (!ok) {
      std::cerr << "FAILURES present\n";
      return kExitAssertion;
    }
    std::cerr << "all checks passed\n";
    return kExitOk;
  }

  return kExitInput;
}
