// breakup: command-line front end for the two-particle Gaussian breakup
// model. Subcommands: sweep | fig1 | schmidt | verify | phase.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.
// Data goes to --out (default stdout); run metadata goes to stderr only, so
// identical configurations produce byte-identical data output.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "breakup/grid.hpp"
#include "breakup/observables.hpp"
#include "breakup/params.hpp"
#include "breakup/scenarios.hpp"
#include "breakup/schmidt.hpp"
#include "breakup/schmidt_svd.hpp"
#include "breakup/states.hpp"
#include "breakup/transforms.hpp"

using nlohmann::json;
using namespace breakup;

namespace {

// ---------------------------------------------------------------------------
// formatting: every emitted number carries 12 significant digits, '.' decimal
// separator regardless of locale (std::to_chars is locale-independent).

std::string fmt12(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// Round through the 12-digit decimal so JSON serialization prints at most
// 12 significant digits as well.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& violations)
      : std::runtime_error(join(violations)) {}

 private:
  static std::string join(const std::vector<std::string>& violations) {
    std::ostringstream os;
    for (const auto& v : violations) os << "\n  - " << v;
    return os.str();
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw ConfigError({"cannot open output file: " + path});
      }
      os_ = &file_;
    }
  }
  std::ostream& stream() { return os_ ? *os_ : std::cout; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

// ---------------------------------------------------------------------------
// flags shared across subcommands

struct Flags {
  std::optional<double> a, b, r, alpha;
  double m = 1.0;
  double hbar = 1.0;
  int grid_n = 512;
  std::optional<double> extent;
  std::optional<double> t_max;
  std::optional<int> t_steps;
  std::optional<double> mu, nu;
  std::vector<double> r_list;
  std::string format;
  std::string out = "-";
};

void add_physics_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--a", f.a, "Relative-coordinate packet width a (default 2)");
  cmd->add_option("--b", f.b, "Center-of-mass packet width b (default 0.5)");
  cmd->add_option("--r", f.r,
                  "Squeezing parameter r = ln(a/b); alternative to --a/--b");
  cmd->add_option("--alpha", f.alpha,
                  "Geometric-mean width alpha = sqrt(ab) (default 1 with --r)");
  cmd->add_option("--m", f.m, "Particle mass (default 1)");
  cmd->add_option("--hbar", f.hbar, "Reduced Planck constant (default 1)");
}

void add_grid_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--grid-n", f.grid_n,
                  "Grid points per axis, power of two >= 64 (default 512)");
  cmd->add_option("--extent", f.extent,
                  "Half-width of the position grid (default: auto-balanced)");
}

void add_output_flags(CLI::App* cmd, Flags& f, const std::string& def_format) {
  f.format = def_format;
  cmd->add_option("--format", f.format, "Output format: csv | json");
  cmd->add_option("--out", f.out, "Output path, '-' for stdout (default)");
}

void validate_common(const Flags& f, std::vector<std::string>& bad) {
  auto positive = [&](const std::optional<double>& v, const char* name) {
    if (v && (!std::isfinite(*v) || *v <= 0.0)) {
      bad.push_back(std::string(name) + " must be finite and > 0");
    }
  };
  positive(f.a, "--a");
  positive(f.b, "--b");
  positive(f.alpha, "--alpha");
  if (f.r && (!std::isfinite(*f.r) || std::abs(*f.r) > 150.0)) {
    bad.push_back("--r must be finite with |r| <= 150");
  }
  if (!std::isfinite(f.m) || f.m <= 0.0) bad.push_back("--m must be > 0");
  if (!std::isfinite(f.hbar) || f.hbar <= 0.0) {
    bad.push_back("--hbar must be > 0");
  }
  if ((f.a || f.b) && (f.r || f.alpha)) {
    bad.push_back("give either --a/--b or --r/--alpha, not both");
  }
  if (f.grid_n < 64 || (f.grid_n & (f.grid_n - 1)) != 0) {
    bad.push_back("--grid-n must be a power of two >= 64");
  }
  if (f.extent && (!std::isfinite(*f.extent) || *f.extent <= 0.0)) {
    bad.push_back("--extent must be finite and > 0");
  }
  if (f.t_max && (!std::isfinite(*f.t_max) || *f.t_max < 0.0)) {
    bad.push_back("--t-max must be >= 0");
  }
  if (f.t_steps && *f.t_steps < 1) bad.push_back("--t-steps must be >= 1");
  if (f.format != "csv" && f.format != "json") {
    bad.push_back("--format must be csv or json");
  }
}

BreakupParams resolve_params(const Flags& f,
                             std::vector<std::string> extra = {}) {
  std::vector<std::string> bad = std::move(extra);
  validate_common(f, bad);
  if (!bad.empty()) throw ConfigError(bad);
  double a, b;
  if (f.r || f.alpha) {
    const double alpha = f.alpha.value_or(1.0);
    const double r = f.r.value_or(0.0);
    a = alpha * std::exp(0.5 * r);
    b = alpha * std::exp(-0.5 * r);
  } else {
    a = f.a.value_or(2.0);
    b = f.b.value_or(0.5);
  }
  return BreakupParams(a, b, f.m, f.hbar);
}

scenarios::GridChoice grid_choice(const Flags& f) {
  return {f.grid_n, f.extent};
}

oracle::GridSpec resolve_spec(const Flags& f, const BreakupParams& p,
                              double t) {
  return f.extent ? oracle::GridSpec(f.grid_n, *f.extent)
                  : oracle::auto_grid_spec(p, t, f.grid_n);
}

// ---------------------------------------------------------------------------
// JSON pieces

json quantity_json(const scenarios::ProbeQuantity& q) {
  return json{{"label", q.label},
              {"value", round12(q.value)},
              {"tolerance", round12(q.tolerance)},
              {"pass", q.pass}};
}

json probe_json(const scenarios::ProbeReport& rep) {
  json q = json::array();
  for (const auto& item : rep.quantities) q.push_back(quantity_json(item));
  json s = json::array();
  for (const auto& item : rep.skipped) {
    s.push_back(json{{"label", item.label}, {"reason", item.reason}});
  }
  return json{{"name", rep.name},
              {"quantities", q},
              {"skipped", s},
              {"verdict", rep.verdict}};
}

void emit_json(Output& out, const json& j) {
  out.stream() << j.dump(2) << "\n";
}

void write_csv_row(std::ostream& os, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << fmt12(row[i]);
  }
  os << '\n';
}

// ---------------------------------------------------------------------------
// subcommands

int run_sweep(const Flags& f) {
  const BreakupParams p = resolve_params(f);
  const DerivedScales s = derive_scales(p);
  const double t_max = f.t_max.value_or(5.0 * s.t0);
  const int steps = f.t_steps.value_or(101);
  const auto times = scenarios::uniform_samples(t_max, steps);

  Output out(f.out);
  if (f.format == "csv") {
    out.stream() << "t,t_over_t0,Q,var_x_single,var_x_coinc,R_x,C,"
                    "heisenberg_product,einstein_product\n";
    for (double t : times) {
      const VarianceReport rep = variance_report(t, p);
      write_csv_row(out.stream(),
                    {t, t / s.t0, diffusion_length(t, p), rep.var_x_single,
                     rep.var_x_coinc, rep.R_x, rep.C, rep.heisenberg_product,
                     rep.einstein_product});
    }
  } else {
    json rows = json::array();
    for (double t : times) {
      const VarianceReport rep = variance_report(t, p);
      rows.push_back(json{{"t", round12(t)},
                          {"t_over_t0", round12(t / s.t0)},
                          {"Q", round12(diffusion_length(t, p))},
                          {"var_x_single", round12(rep.var_x_single)},
                          {"var_x_coinc", round12(rep.var_x_coinc)},
                          {"R_x", round12(rep.R_x)},
                          {"C", round12(rep.C)},
                          {"heisenberg_product",
                           round12(rep.heisenberg_product)},
                          {"einstein_product", round12(rep.einstein_product)}});
    }
    emit_json(out, json{{"schema", 1}, {"command", "sweep"}, {"rows", rows}});
  }
  return 0;
}

int run_fig1(const Flags& f) {
  std::vector<std::string> bad;
  if (f.t_max && (!std::isfinite(*f.t_max) || *f.t_max < 0.0)) {
    bad.push_back("--t-max must be >= 0");
  }
  if (f.t_steps && *f.t_steps < 1) bad.push_back("--t-steps must be >= 1");
  if (f.format != "csv" && f.format != "json") {
    bad.push_back("--format must be csv or json");
  }
  for (double r : f.r_list) {
    if (!std::isfinite(r) || std::abs(r) > 150.0) {
      bad.push_back("--r values must be finite with |r| <= 150");
      break;
    }
  }
  if (!bad.empty()) throw ConfigError(bad);

  const std::vector<double> r_list =
      f.r_list.empty() ? std::vector<double>{0.0, 1.0, 2.0, 5.0} : f.r_list;
  const auto t_grid =
      scenarios::uniform_samples(f.t_max.value_or(5.0), f.t_steps.value_or(201));
  const scenarios::Figure1Table tab = scenarios::figure1(r_list, t_grid);

  Output out(f.out);
  if (f.format == "csv") {
    out.stream() << "r,t_over_t0,C\n";
    for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        write_csv_row(out.stream(),
                      {tab.r_values[ri], tab.t_over_t0[ti],
                       tab.C_values[ri][ti]});
      }
    }
  } else {
    json rows = json::array();
    for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        rows.push_back(json{{"r", round12(tab.r_values[ri])},
                            {"t_over_t0", round12(tab.t_over_t0[ti])},
                            {"C", round12(tab.C_values[ri][ti])}});
      }
    }
    emit_json(out, json{{"schema", 1}, {"command", "fig1"}, {"rows", rows}});
  }
  return 0;
}

int run_schmidt(const Flags& f) {
  std::vector<std::string> extra;
  if (f.format != "json") extra.push_back("schmidt emits JSON; use --format json");
  const BreakupParams p = resolve_params(f, std::move(extra));
  const double t = f.t_max.value_or(0.0);
  constexpr int kModes = 8;

  json analytic_lambdas = json::array();
  for (int n = 0; n < kModes; ++n) {
    analytic_lambdas.push_back(round12(schmidt_coefficient(n, p)));
  }

  const oracle::GridSpec spec = resolve_spec(f, p, t);
  oracle::Grid2D mom = oracle::normalize(oracle::discretize(
      [&p](double k1, double k2) { return psi_momentum(k1, k2, 0.0, p); },
      spec, oracle::SpaceTag::momentum));
  mom = oracle::evolve_free(mom, t, p);
  const oracle::SchmidtSpectrum spectrum = oracle::schmidt_svd(mom);

  json numeric_lambdas = json::array();
  const int n_have = static_cast<int>(spectrum.lambdas.size());
  for (int n = 0; n < std::min(kModes, n_have); ++n) {
    numeric_lambdas.push_back(round12(spectrum.lambdas[n]));
  }
  double max_rel = 0.0;
  for (int n = 0; n < kModes; ++n) {
    const double lambda = schmidt_coefficient(n, p);
    if (lambda < 1e-13) continue;
    const double err = n < n_have
                           ? std::abs(spectrum.lambdas[n] - lambda) / lambda
                           : 1.0;
    max_rel = std::max(max_rel, err);
  }

  Output out(f.out);
  emit_json(out,
            json{{"schema", 1},
                 {"command", "schmidt"},
                 {"a", round12(p.a)},
                 {"b", round12(p.b)},
                 {"t", round12(t)},
                 {"analytic",
                  json{{"lambdas", analytic_lambdas},
                       {"K", round12(schmidt_number(p))}}},
                 {"numeric", json{{"lambdas", numeric_lambdas},
                                  {"K", round12(spectrum.K_numeric)},
                                  {"n_modes", n_have}}},
                 {"max_rel_error", round12(max_rel)}});
  return 0;
}

int run_verify(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> extra;
  if (f.format != "json") extra.push_back("verify emits JSON; use --format json");
  if (f.mu && (!std::isfinite(*f.mu) || *f.mu <= 0.0)) {
    extra.push_back("--mu must be finite and > 0");
  }
  if (f.nu && (!std::isfinite(*f.nu) || *f.nu < 0.0)) {
    extra.push_back("--nu must be >= 0");
  }
  const BreakupParams p = resolve_params(f, std::move(extra));
  const DerivedScales s = derive_scales(p);

  std::vector<double> times;
  if (f.t_max) {
    times = scenarios::uniform_samples(*f.t_max, f.t_steps.value_or(4));
  } else {
    times = {0.0, 0.5 * s.t0, s.t0, 2.0 * s.t0};
  }
  const scenarios::GridChoice grid = grid_choice(f);
  const PurePhaseParams phase(f.mu.value_or(1.0), f.nu.value_or(1.0));
  const PurePhaseParams phase0(phase.mu, 0.0);

  std::vector<scenarios::ProbeReport> probes;
  probes.push_back(scenarios::analytic_vs_oracle(p, times, grid));
  probes.push_back(scenarios::factorization_probe(p, grid));
  probes.push_back(scenarios::uncertainty_cases(p));
  probes.push_back(scenarios::pure_phase_probe(phase, grid));
  probes.back().name += "_nu";
  probes.push_back(scenarios::pure_phase_probe(phase0, grid));
  probes.back().name += "_nu0";

  bool all_pass = true;
  json probe_list = json::array();
  for (const auto& rep : probes) {
    probe_list.push_back(probe_json(rep));
    all_pass = all_pass && rep.verdict;
    std::cerr << "probe " << rep.name << ": "
              << (rep.verdict ? "PASS" : "FAIL") << " ("
              << rep.quantities.size() << " checks, " << rep.skipped.size()
              << " skipped)\n";
    for (const auto& q : rep.quantities) {
      if (!q.pass) {
        std::cerr << "  FAIL " << q.label << " = " << fmt12(q.value)
                  << " (tolerance " << fmt12(q.tolerance) << ")\n";
      }
    }
  }

  json times_json = json::array();
  for (double t : times) times_json.push_back(round12(t));
  json config{{"a", round12(p.a)},         {"b", round12(p.b)},
              {"m", round12(p.m)},         {"hbar", round12(p.hbar)},
              {"grid_n", f.grid_n},        {"times", times_json},
              {"mu", round12(phase.mu)},   {"nu", round12(phase.nu)}};
  config["extent"] = f.extent ? json(round12(*f.extent)) : json(nullptr);

  Output out(f.out);
  emit_json(out, json{{"schema", 1},
                      {"command", "verify"},
                      {"config", config},
                      {"probes", probe_list},
                      {"all_pass", all_pass}});

  const auto elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "verify: " << (all_pass ? "PASS" : "FAIL") << " in "
            << fmt12(elapsed.count()) << " s\n";
  return all_pass ? 0 : 1;
}

int run_phase(const Flags& f) {
  std::vector<std::string> bad;
  if (!std::isfinite(*f.mu) || *f.mu <= 0.0) {
    bad.push_back("--mu must be finite and > 0");
  }
  if (!std::isfinite(*f.nu) || *f.nu < 0.0) bad.push_back("--nu must be >= 0");
  if (f.grid_n < 64 || (f.grid_n & (f.grid_n - 1)) != 0) {
    bad.push_back("--grid-n must be a power of two >= 64");
  }
  if (f.extent && (!std::isfinite(*f.extent) || *f.extent <= 0.0)) {
    bad.push_back("--extent must be finite and > 0");
  }
  if (f.format != "json") bad.push_back("phase emits JSON; use --format json");
  if (!bad.empty()) throw ConfigError(bad);

  const PurePhaseParams q(*f.mu, *f.nu);
  const scenarios::GridChoice grid = grid_choice(f);
  const scenarios::ProbeReport rep = scenarios::pure_phase_probe(q, grid);
  const auto ridge = scenarios::phase_ridge(q, grid);

  json ridge_json = json::array();
  for (const auto& pt : ridge) {
    ridge_json.push_back(json{{"x1", round12(pt.x1)},
                              {"k2_argmax", round12(pt.k2_argmax)}});
  }

  Output out(f.out);
  emit_json(out, json{{"schema", 1},
                      {"command", "phase"},
                      {"mu", round12(q.mu)},
                      {"nu", round12(q.nu)},
                      {"probe", probe_json(rep)},
                      {"ridge", ridge_json}});
  return rep.verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "breakup: analytics and numerical verification for the entanglement of "
      "a dissociating pair of free Gaussian wavepackets"};
  app.require_subcommand(1);

  Flags sweep_f, fig1_f, schmidt_f, verify_f, phase_f;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Time sweep of variances, R_x, C(t) and uncertainty products");
  add_physics_flags(sweep, sweep_f);
  sweep->add_option("--t-max", sweep_f.t_max,
                    "Largest time in the sweep (default 5 t0)");
  sweep->add_option("--t-steps", sweep_f.t_steps,
                    "Number of samples including t = 0 (default 101)");
  add_output_flags(sweep, sweep_f, "csv");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "C(t) table over t/t0 for a list of squeezing parameters r");
  fig1->add_option("--r", fig1_f.r_list,
                   "Squeezing parameters r (default 0 1 2 5)")
      ->expected(-1);
  fig1->add_option("--t-max", fig1_f.t_max,
                   "Largest t/t0 in the table (default 5)");
  fig1->add_option("--t-steps", fig1_f.t_steps,
                   "Number of t/t0 samples (default 201)");
  add_output_flags(fig1, fig1_f, "csv");

  CLI::App* schmidt = app.add_subcommand(
      "schmidt", "Analytic vs SVD Schmidt spectrum and Schmidt number");
  add_physics_flags(schmidt, schmidt_f);
  add_grid_flags(schmidt, schmidt_f);
  schmidt->add_option("--t-max", schmidt_f.t_max,
                      "Evaluation time for the numeric spectrum (default 0)");
  add_output_flags(schmidt, schmidt_f, "json");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run every probe and the analytic-vs-grid cross validation");
  add_physics_flags(verify, verify_f);
  add_grid_flags(verify, verify_f);
  verify->add_option("--t-max", verify_f.t_max,
                     "Override the default times {0, t0/2, t0, 2 t0}");
  verify->add_option("--t-steps", verify_f.t_steps,
                     "Samples for --t-max (default 4)");
  verify->add_option("--mu", verify_f.mu,
                     "Pure-phase confinement for the phase probe (default 1)");
  verify->add_option("--nu", verify_f.nu,
                     "Pure-phase coupling for the phase probe (default 1)");
  add_output_flags(verify, verify_f, "json");

  CLI::App* phase = app.add_subcommand(
      "phase", "Pure-phase state probe with the x1-k2 correlation ridge");
  phase->add_option("--mu", phase_f.mu, "Gaussian confinement mu > 0")
      ->required();
  phase->add_option("--nu", phase_f.nu, "Phase coupling nu >= 0")->required();
  add_grid_flags(phase, phase_f);
  add_output_flags(phase, phase_f, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sweep->parsed()) return run_sweep(sweep_f);
    if (fig1->parsed()) return run_fig1(fig1_f);
    if (schmidt->parsed()) return run_schmidt(schmidt_f);
    if (verify->parsed()) return run_verify(verify_f);
    if (phase->parsed()) return run_phase(phase_f);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error:" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: a subcommand is required
}
