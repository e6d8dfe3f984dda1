#include "ctl/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctl/config.hpp"
#include "ctl/constants.hpp"
#include "ctl/correlations.hpp"
#include "ctl/dynamics.hpp"
#include "ctl/errors.hpp"
#include "ctl/fock.hpp"
#include "ctl/hamiltonian.hpp"
#include "ctl/matching.hpp"
#include "ctl/thermo.hpp"
#include "ctl/threads.hpp"

namespace ctl {

namespace {

namespace fs = std::filesystem;

constexpr const char* kToolName = "ctl_sim";
constexpr const char* kToolVersion = "1.0.0";

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  long long seed = 0;
  double tol = -1.0;  // negative means unset

  bool has_tol() const { return tol > 0.0; }
  double propagation_tol() const { return has_tol() ? tol : 1e-10; }
};

struct CmdOutcome {
  Json request = Json::object();
  Json payload = Json::object();
  Json invariants = Json::object();
  std::vector<std::string> outputs;
  bool ok = true;
};

// Shortest round-trippable decimal, locale-independent.
std::string format_num(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const fs::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write " + file.string());
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_num(row[c]);
    }
    out << '\n';
  }
}

Json mode_json(const ModeIndex& m) {
  return {{"j", m.j}, {"line", m.line == Line::Left ? "left" : "right"}};
}

std::string mode_label(const ModeIndex& m) {
  return (m.line == Line::Left ? "l" : "r") + std::to_string(m.j);
}

const Json& block_of(const RunConfig& cfg, const char* name) {
  if (!cfg.blocks.contains(name)) {
    throw ConfigError(std::string("config: missing \"") + name +
                      "\" section for this command");
  }
  return cfg.blocks[name];
}

std::pair<ModeIndex, ModeIndex> parse_pair(const Json& value,
                                           const std::string& context) {
  require_keys(value, {"j_left", "j_right"}, context);
  if (!value.contains("j_left") || !value.contains("j_right")) {
    throw ConfigError(context + ": needs j_left and j_right");
  }
  return {{value["j_left"].get<int>(), Line::Left},
          {value["j_right"].get<int>(), Line::Right}};
}

CmdOutcome cmd_dispersion(const RunConfig& cfg, const CommonOpts& opts) {
  if (cfg.blocks.contains("dispersion")) {
    require_keys(cfg.blocks["dispersion"], {}, "dispersion");
  }
  const CircuitParams& p = cfg.circuit;

  std::vector<std::vector<double>> rows;
  bool omega_decreasing = true, upsilon_increasing = true, above_bare = true;
  double prev_w = 0.0, prev_u = 0.0;
  for (int j = 1; j <= p.n_cells / 2; ++j) {
    const double w = omega_bare(j, p);
    const double wc = omega_corrected(j, p);
    const double u = upsilon_bare(j, p);
    const double uc = upsilon_corrected(j, p);
    rows.push_back({double(j), wave_vector(j, p), w, wc, u, uc,
                    epsilon_corrected(j, p) / constants::hbar});
    if (j > 1 && w >= prev_w) omega_decreasing = false;
    if (j > 1 && u <= prev_u) upsilon_increasing = false;
    if (wc < w || uc < u) above_bare = false;
    prev_w = w;
    prev_u = u;
  }
  write_csv(fs::path(opts.out_dir) / "dispersion.csv",
            {"j", "k_j", "omega_bare", "omega_corrected", "upsilon_bare",
             "upsilon_corrected", "epsilon_corrected_over_hbar"},
            rows);

  CmdOutcome res;
  res.invariants = {{"omega_bare_decreasing", omega_decreasing},
                    {"upsilon_bare_increasing", upsilon_increasing},
                    {"corrected_above_bare", above_bare}};
  res.outputs = {"dispersion.csv"};
  res.ok = omega_decreasing && upsilon_increasing && above_bare;
  return res;
}

CmdOutcome cmd_match(const RunConfig& cfg, const CommonOpts&) {
  const Json& block = block_of(cfg, "match");
  require_keys(block, {"j_values", "bracket"}, "match");
  if (!block.contains("j_values") || !block["j_values"].is_array()) {
    throw ConfigError("match.j_values must be an array of mode numbers");
  }
  std::pair<double, double> bracket{1e-15, 1e-9};
  if (block.contains("bracket")) {
    const Json& b = block["bracket"];
    if (!b.is_array() || b.size() != 2) {
      throw ConfigError("match.bracket must be [low, high]");
    }
    bracket = {parse_quantity(b[0], Quantity::Capacitance, "match.bracket[0]"),
               parse_quantity(b[1], Quantity::Capacitance, "match.bracket[1]")};
  }

  std::vector<int> wanted;
  for (const Json& v : block["j_values"]) {
    const int j = v.get<int>();
    bool seen = false;
    for (int w : wanted) seen = seen || w == j;
    if (!seen) wanted.push_back(j);
  }

  CmdOutcome res;
  res.request = {{"j_values", wanted},
                 {"bracket", {bracket.first, bracket.second}}};
  Json results = Json::array();
  bool all_solved = true;
  for (int j : wanted) {
    try {
      const CrSolveResult sol =
          solve_cr_for_degeneracy_report(j, cfg.circuit, bracket);
      results.push_back({{"j", j},
                         {"c_r", sol.c_r},
                         {"c_r_picofarad", sol.c_r * 1e12},
                         {"relative_residual", sol.residual},
                         {"iterations", sol.iterations}});
    } catch (const std::exception& e) {
      results.push_back({{"j", j}, {"error", e.what()}});
      all_solved = false;
    }
  }
  res.payload = {{"results", results}};
  res.invariants = {{"all_solved", all_solved}};
  res.ok = all_solved;
  return res;
}

CmdOutcome cmd_classify(const RunConfig& cfg, const CommonOpts&) {
  const Json& block = block_of(cfg, "classify");
  require_keys(block, {"modes", "tol"}, "classify");
  if (!block.contains("modes") || !block["modes"].is_array()) {
    throw ConfigError("classify.modes must be an array");
  }
  std::vector<ModeIndex> modes;
  int k = 0;
  for (const Json& m : block["modes"]) {
    modes.push_back(parse_mode(m, "classify.modes[" + std::to_string(k++) + "]"));
  }
  std::optional<double> tol;
  if (block.contains("tol")) {
    tol = parse_quantity(block["tol"], Quantity::AngularFrequency,
                         "classify.tol");
  }

  const auto specs = classify_resonances(cfg.drive, cfg.circuit, modes, tol);
  Json list = Json::array();
  for (const ResonanceSpec& s : specs) {
    Json entry = {{"kind", to_string(s.kind)},
                  {"mode_left", mode_json(s.mode_left)},
                  {"mode_right", mode_json(s.mode_right)},
                  {"detuning", s.detuning}};
    if (s.drive_tone_index) {
      entry["drive_tone_index"] = *s.drive_tone_index;
    } else {
      entry["drive_tone_index"] = nullptr;
    }
    list.push_back(entry);
  }

  CmdOutcome res;
  Json req_modes = Json::array();
  for (const ModeIndex& m : modes) req_modes.push_back(mode_json(m));
  res.request = {{"modes", req_modes}};
  if (tol) res.request["tol"] = *tol;
  res.payload = {{"resonances", list}};
  res.invariants = {{"count", static_cast<int>(specs.size())}};
  return res;
}

CmdOutcome cmd_evolve(const RunConfig& cfg, const CommonOpts& opts) {
  const Json& block = block_of(cfg, "evolve");
  require_keys(block, {"modes", "resonance", "initial", "t_max", "n_steps"},
               "evolve");
  if (!block.contains("modes") || !block.contains("t_max")) {
    throw ConfigError("evolve needs modes and t_max");
  }
  std::vector<ModeIndex> modes;
  int k = 0;
  for (const Json& m : block["modes"]) {
    modes.push_back(parse_mode(m, "evolve.modes[" + std::to_string(k++) + "]"));
  }
  const double t_max = parse_quantity(block["t_max"], Quantity::Time,
                                      "evolve.t_max");
  const int n_steps = block.value("n_steps", 200);
  if (n_steps < 1 || t_max < 0.0) {
    throw ConfigError("evolve needs n_steps >= 1 and t_max >= 0");
  }

  // Resonance selection: "auto" takes the first classified condition,
  // an integer an explicit one, "free" no interaction at all (pure frame
  // rotation, occupations constant).
  std::string selection = "auto";
  int index = -1;
  if (block.contains("resonance")) {
    if (block["resonance"].is_number_integer()) {
      index = block["resonance"].get<int>();
      selection = "index";
    } else {
      selection = block["resonance"].get<std::string>();
      if (selection != "auto" && selection != "free") {
        throw ConfigError("evolve.resonance must be \"auto\", \"free\" or an index");
      }
    }
  }

  QuadraticHamiltonian h = zero_hamiltonian(modes);
  Json chosen = nullptr;
  if (selection != "free") {
    const auto specs = classify_resonances(cfg.drive, cfg.circuit, modes);
    if (selection == "index") {
      if (index < 0 || index >= static_cast<int>(specs.size())) {
        throw ConfigError("evolve.resonance index out of range");
      }
      h = rwa_effective_hamiltonian(specs[index], cfg.drive, cfg.circuit);
      chosen = to_string(specs[index].kind);
    } else if (!specs.empty()) {
      h = rwa_effective_hamiltonian(specs[0], cfg.drive, cfg.circuit);
      chosen = to_string(specs[0].kind);
    }
  }
  const int n = h.size();

  GaussianState state = GaussianState::vacuum(n);
  std::string initial_type = "vacuum";
  if (block.contains("initial")) {
    const Json& init = block["initial"];
    require_keys(init, {"type", "occupations"}, "evolve.initial");
    initial_type = init.value("type", "vacuum");
    if (initial_type == "thermal") {
      if (!init.contains("occupations") ||
          static_cast<int>(init["occupations"].size()) != n) {
        throw ConfigError(
            "evolve.initial.occupations must list one value per evolved mode");
      }
      std::vector<double> occ;
      for (const Json& v : init["occupations"]) occ.push_back(v.get<double>());
      state = GaussianState::thermal(occ);
    } else if (initial_type != "vacuum") {
      throw ConfigError("evolve.initial.type must be vacuum or thermal");
    }
  }

  const double tol = opts.propagation_tol();
  const double dt = t_max / n_steps;
  const Eigen::MatrixXd s_step = symplectic_propagate(h, 0.0, dt, tol);
  const Eigen::MatrixXd form = symplectic_form(n);
  const double symp_defect =
      (s_step.transpose() * form * s_step - form).cwiseAbs().maxCoeff();

  std::vector<std::string> header{"t"};
  for (const ModeIndex& m : h.modes) header.push_back("n_" + mode_label(m));
  std::vector<std::vector<double>> rows;
  double max_uncertainty = 0.0;
  for (int step = 0; step <= n_steps; ++step) {
    std::vector<double> row{dt * step};
    for (int mode = 0; mode < n; ++mode) row.push_back(state.occupation(mode));
    rows.push_back(std::move(row));
    max_uncertainty = std::max(max_uncertainty, state.uncertainty_defect());
    if (step < n_steps) state.apply(s_step);
  }
  write_csv(fs::path(opts.out_dir) / "evolve.csv", header, rows);

  CmdOutcome res;
  res.request = {{"resonance", chosen},
                 {"initial", initial_type},
                 {"t_max", t_max},
                 {"n_steps", n_steps}};
  const bool symp_ok = symp_defect <= 10.0 * tol;
  const bool unc_ok = max_uncertainty <= 1e-9;
  res.invariants = {{"symplectic_defect", symp_defect},
                    {"symplectic_ok", symp_ok},
                    {"max_uncertainty_defect", max_uncertainty},
                    {"uncertainty_ok", unc_ok}};
  res.outputs = {"evolve.csv"};
  res.ok = symp_ok && unc_ok;
  return res;
}

CmdOutcome cmd_g2(const RunConfig& cfg, const CommonOpts& opts) {
  const Json& block = block_of(cfg, "g2");
  require_keys(block,
               {"family", "s_left", "s_right", "xi", "pair", "xi_t_max",
                "n_points", "prefactor"},
               "g2");
  const std::string family = block.value("family", "");
  if (family != "hopping" && family != "raman" && family != "squeeze") {
    throw ConfigError("g2.family must be hopping, raman or squeeze");
  }
  const int s_left = block.value("s_left", 0);
  const int s_right = block.value("s_right", 0);
  const double xi_t_max = block.value("xi_t_max", 10.0);
  const int n_points = block.value("n_points", 201);
  if (n_points < 2 || xi_t_max <= 0.0) {
    throw ConfigError("g2 needs n_points >= 2 and xi_t_max > 0");
  }

  if (block.contains("xi") == block.contains("pair")) {
    throw ConfigError("g2 needs exactly one of xi or pair");
  }
  double xi = 0.0;
  PrefactorContext ctx;
  if (block.contains("xi")) {
    xi = parse_quantity(block["xi"], Quantity::AngularFrequency, "g2.xi");
  } else {
    const auto [left, right] = parse_pair(block["pair"], "g2.pair");
    const CouplingConstants c =
        effective_couplings(left, right, cfg.drive, cfg.circuit);
    xi = family == "hopping" ? c.xi_hp : (family == "raman" ? c.xi_rm : c.xi_sq);
    if (block.value("prefactor", "unit") == "physical") {
      ctx = correlation_prefactor(left, right, cfg.circuit);
    }
  }
  if (block.value("prefactor", "unit") == "physical" && block.contains("xi")) {
    throw ConfigError("g2 physical prefactor needs the pair form");
  }
  if (xi == 0.0) {
    throw NoInteraction("g2 scan needs a nonzero rate (is the tone missing?)");
  }

  std::vector<std::vector<double>> rows;
  bool nonnegative = true;
  double final_norm = std::nan("");
  for (int k = 0; k < n_points; ++k) {
    const double xt = xi_t_max * k / (n_points - 1);
    const double t = xt / std::abs(xi);
    const CorrelationResult r =
        family == "squeeze" ? g2_squeeze_fock(s_left, s_right, xi, t, t, ctx)
                            : g2_hopping_raman_fock(s_left, s_right, xi, t, t,
                                                    ctx);
    const double norm = r.g2_normalized.value_or(std::nan(""));
    rows.push_back({xt, t, r.g2_unnormalized, norm, r.g1_left, r.g1_right});
    nonnegative = nonnegative && r.g2_unnormalized >= -1e-12;
    final_norm = norm;
  }
  write_csv(fs::path(opts.out_dir) / "g2_scan.csv",
            {"xi_t", "t", "g2_unnormalized", "g2_normalized", "g1_left",
             "g1_right"},
            rows);

  CmdOutcome res;
  res.request = {{"family", family},
                 {"s_left", s_left},
                 {"s_right", s_right},
                 {"xi", xi},
                 {"xi_t_max", xi_t_max},
                 {"n_points", n_points}};
  res.invariants = {{"nonnegative_correlator", nonnegative}};
  if (std::isfinite(final_norm)) res.invariants["final_normalized"] = final_norm;
  res.outputs = {"g2_scan.csv"};
  res.ok = nonnegative;
  return res;
}

CmdOutcome cmd_hom(const RunConfig& cfg, const CommonOpts& opts) {
  const Json& block = block_of(cfg, "hom");
  require_keys(block, {"xi", "pair", "n_points"}, "hom");
  if (block.contains("xi") == block.contains("pair")) {
    throw ConfigError("hom needs exactly one of xi or pair");
  }
  double xi = 0.0;
  if (block.contains("xi")) {
    xi = parse_quantity(block["xi"], Quantity::AngularFrequency, "hom.xi");
  } else {
    const auto [left, right] = parse_pair(block["pair"], "hom.pair");
    xi = effective_couplings(left, right, cfg.drive, cfg.circuit).xi_hp;
  }
  const int n_points = block.value("n_points", 181);
  if (n_points < 2) {
    throw ConfigError("hom.n_points must be at least 2");
  }

  const double t_dip = hom_dip(xi);
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < n_points; ++k) {
    const double xt = std::numbers::pi * k / (n_points - 1);
    const double t = xt / std::abs(xi);
    const CorrelationResult r = g2_hopping_raman_fock(1, 1, xi, t, t);
    rows.push_back({xt, t, r.g2_normalized.value_or(std::nan(""))});
  }
  write_csv(fs::path(opts.out_dir) / "hom_scan.csv", {"xi_t", "t", "g2_normalized"},
            rows);

  const CorrelationResult at_dip = g2_hopping_raman_fock(1, 1, xi, t_dip, t_dip);
  const FockState out = hom_output_state(xi, t_dip);
  const FockBasis basis(out.cutoffs);
  const double p11 = std::norm(out.amplitudes(basis.index({1, 1})));
  const double p20 = std::norm(out.amplitudes(basis.index({2, 0})));
  const double p02 = std::norm(out.amplitudes(basis.index({0, 2})));
  const double g2_at_dip = at_dip.g2_normalized.value_or(std::nan(""));

  CmdOutcome res;
  res.request = {{"xi", xi}, {"n_points", n_points}};
  res.payload = {{"report",
                  {{"t_dip", t_dip},
                   {"g2_at_dip", g2_at_dip},
                   {"prob_11_at_dip", p11},
                   {"prob_20_at_dip", p20},
                   {"prob_02_at_dip", p02}}}};
  const bool dip_ok = g2_at_dip <= 1e-10;
  const bool noon_ok =
      std::abs(p20 - 0.5) <= 1e-8 && std::abs(p02 - 0.5) <= 1e-8 && p11 <= 1e-10;
  res.invariants = {{"dip_vanishes", dip_ok}, {"noon_balanced", noon_ok}};
  res.outputs = {"hom_scan.csv"};
  res.ok = dip_ok && noon_ok;
  return res;
}

CmdOutcome cmd_power(const RunConfig& cfg, const CommonOpts& opts) {
  const Json& block = block_of(cfg, "power");
  require_keys(block, {"pair", "t_hot", "t_cold", "n_points", "strokes"},
               "power");
  if (!block.contains("pair") || !block.contains("t_hot") ||
      !block.contains("t_cold")) {
    throw ConfigError("power needs pair, t_hot and t_cold");
  }
  const auto [hot_mode, cold_mode] = parse_pair(block["pair"], "power.pair");
  const double t_hot =
      parse_quantity(block["t_hot"], Quantity::Temperature, "power.t_hot");
  const double t_cold =
      parse_quantity(block["t_cold"], Quantity::Temperature, "power.t_cold");
  const int n_points = block.value("n_points", 501);
  const double strokes = block.value("strokes", 1.0);
  if (n_points < 2 || strokes <= 0.0) {
    throw ConfigError("power needs n_points >= 2 and strokes > 0");
  }

  const CouplingConstants c =
      effective_couplings(hot_mode, cold_mode, cfg.drive, cfg.circuit);
  if (c.xi_rm == 0.0) {
    throw NoInteraction("no drive tone, the conversion rate vanishes");
  }
  const double t_end = strokes * std::numbers::pi / (2.0 * std::abs(c.xi_rm));
  std::vector<double> grid(n_points);
  for (int k = 0; k < n_points; ++k) grid[k] = t_end * k / (n_points - 1);

  const PowerTrace trace =
      simulate_amplifier({t_hot, hot_mode}, {t_cold, cold_mode}, cfg.drive,
                         cfg.circuit, grid, opts.propagation_tol());

  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    rows.push_back({trace.times[k], trace.power[k]});
  }
  write_csv(fs::path(opts.out_dir) / "power_trace.csv", {"t", "power"}, rows);

  CmdOutcome res;
  res.request = {{"pair",
                  {{"left", mode_json(hot_mode)}, {"right", mode_json(cold_mode)}}},
                 {"t_hot", t_hot},
                 {"t_cold", t_cold},
                 {"n_points", n_points},
                 {"strokes", strokes}};
  res.payload = {{"report",
                  {{"time_average", trace.time_average},
                   {"n_hot", trace.n_hot},
                   {"n_cold", trace.n_cold},
                   {"xi", trace.xi},
                   {"drive_freq", trace.drive_freq}}}};
  // Net conversion must follow the occupation imbalance.
  const double scale = constants::hbar * trace.drive_freq *
                       std::abs(trace.xi) *
                       std::max(trace.n_hot + trace.n_cold, 1e-30);
  const bool sign_ok = trace.time_average * (trace.n_hot - trace.n_cold) >=
                       -1e-9 * scale;
  res.invariants = {{"sign_follows_imbalance", sign_ok}};
  res.outputs = {"power_trace.csv"};
  res.ok = sign_ok;
  return res;
}

}  // namespace

int run_cli(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"simulator for a flux-coupled pair of superconducting "
               "transmission lines",
               kToolName};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "run configuration JSON")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "seed recorded in run metadata");
    sub->add_option("--tol", opts.tol, "propagation tolerance override");
  };
  add_common(app.add_subcommand("dispersion", "band-structure table"));
  add_common(app.add_subcommand("match", "solve right-line capacitance for degeneracy"));
  add_common(app.add_subcommand("classify", "list resonances met by the drive"));
  add_common(app.add_subcommand("evolve", "propagate Gaussian moments on a resonance"));
  add_common(app.add_subcommand("g2", "two-time correlator scan"));
  add_common(app.add_subcommand("hom", "two-photon interference dip report"));
  add_common(app.add_subcommand("power", "heat-engine stroke power trace"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = load_config(opts.config_path);
    fs::create_directories(opts.out_dir);

    CmdOutcome out;
    if (command == "dispersion") out = cmd_dispersion(cfg, opts);
    else if (command == "match") out = cmd_match(cfg, opts);
    else if (command == "classify") out = cmd_classify(cfg, opts);
    else if (command == "evolve") out = cmd_evolve(cfg, opts);
    else if (command == "g2") out = cmd_g2(cfg, opts);
    else if (command == "hom") out = cmd_hom(cfg, opts);
    else out = cmd_power(cfg, opts);

    Json sidecar = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                    {"command", command},
                    {"seed", opts.seed}};
    if (opts.has_tol()) sidecar["tolerance"] = opts.tol;
    sidecar["config"] = cfg.resolved();
    sidecar["request"] = out.request;
    for (const auto& item : out.payload.items()) {
      sidecar[item.key()] = item.value();
    }
    sidecar["invariants"] = out.invariants;
    sidecar["outputs"] = out.outputs;
    sidecar["passed"] = out.ok;

    std::ofstream meta(fs::path(opts.out_dir) / (command + ".json"));
    if (!meta) {
      throw std::runtime_error("cannot write run metadata");
    }
    meta << sidecar.dump(2) << '\n';

    if (!out.ok) {
      std::cerr << kToolName << " " << command
                << ": an invariant check failed, see " << command << ".json\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << kToolName << " " << command << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ctl
