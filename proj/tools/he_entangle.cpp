// he_entangle: helium 1Se resonances by stabilization, and their
// Schmidt-Slater entanglement.
//
//   he_entangle bound   --omega 6 --bound-alpha 1.8
//   he_entangle scan    --omega 9
//   he_entangle fit     --omega 9 [--state 2s2] [--curve K --alpha-window lo,hi]
//   he_entangle entropy --omega 9 --state 2s2 [--alpha-star A --curve K] [--oracle]
//   he_entangle check   --omega 7 --state 2s2
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hent/config.hpp"
#include "hent/error.hpp"
#include "hent/pipeline.hpp"
#include "hent/stabilization.hpp"

namespace {

using namespace hent;

struct Overrides {
  std::string config_file;
  std::optional<int> omega;
  std::optional<double> z;
  std::optional<double> alpha_min, alpha_max, alpha_step;
  std::optional<double> energy_ceiling, curve_jump;
  bool non_interacting = false;
  std::optional<int> l_max;
  std::optional<double> r_max;
  std::optional<int> nodes;
  std::vector<std::string> windows;
  std::optional<std::int64_t> mc_samples;
  std::optional<std::uint64_t> mc_seed;
  std::optional<int> mc_streams;
  std::optional<std::string> output_dir;
  bool working_precision = false;
  std::optional<double> rank_tolerance;
  std::optional<double> bound_alpha;
  bool optimize_alpha = false;
  bool dump_config = false;
};

WindowOverride parse_window(const std::string& text) {
  // state:lo:hi
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("--window expects state:e_lo:e_hi, got '" + text + "'");
  try {
    return {parts[0], std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception&) {
    throw ValidationError("--window: bad number in '" + text + "'");
  }
}

RunConfig effective_config(const Overrides& o) {
  RunConfig c = o.config_file.empty() ? RunConfig{} : load_config(o.config_file);
  if (o.omega) c.omega = *o.omega;
  if (o.z) c.z = *o.z;
  if (o.alpha_min) c.alpha_min = *o.alpha_min;
  if (o.alpha_max) c.alpha_max = *o.alpha_max;
  if (o.alpha_step) c.alpha_step = *o.alpha_step;
  if (o.energy_ceiling) c.energy_ceiling = *o.energy_ceiling;
  if (o.curve_jump) c.curve_jump_threshold = *o.curve_jump;
  if (o.non_interacting) c.interaction = false;
  if (o.l_max) c.l_max = *o.l_max;
  if (o.r_max) c.grid_r_max = *o.r_max;
  if (o.nodes) c.grid_nodes = *o.nodes;
  for (const auto& w : o.windows) {
    const WindowOverride parsed = parse_window(w);
    std::erase_if(c.windows, [&](const WindowOverride& x) { return x.state == parsed.state; });
    c.windows.push_back(parsed);
  }
  if (o.mc_samples) c.mc_samples = *o.mc_samples;
  if (o.mc_seed) c.mc_seed = *o.mc_seed;
  if (o.mc_streams) c.mc_streams = *o.mc_streams;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.working_precision) c.extended_precision = false;
  if (o.rank_tolerance) c.rank_tolerance = *o.rank_tolerance;
  if (o.bound_alpha) c.bound_alpha = *o.bound_alpha;
  if (o.optimize_alpha) c.bound_optimize_alpha = true;
  validate(c);
  return c;
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (std::filesystem::path(c.output_dir) / name).string();
}

std::string tag(const RunConfig& c) { return "_w" + std::to_string(c.omega); }

std::vector<std::string> file_comment(const RunConfig& c, const std::string& command) {
  return {"he_entangle " + code_version() + " " + command + " config_hash=" + config_hash(c)};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void save_scan(const RunConfig& c, const StabilizationScan& s, const std::string& path,
               const std::string& status) {
  std::vector<std::string> comment = file_comment(c, "scan");
  if (!status.empty()) comment.push_back("status=" + status);
  std::ostringstream os;
  write_scan_csv(os, s, comment);
  write_file_atomic(path, os.str());
}

StabilizationScan load_or_run_scan(const RunConfig& c, const std::string& scan_file) {
  const std::string path = scan_file.empty() ? out_path(c, "scan" + tag(c) + ".csv") : scan_file;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    StabilizationScan s = read_scan_csv(in);
    if (s.omega != c.omega) {
      throw ValidationError("scan file " + path + " is for omega = " + std::to_string(s.omega));
    }
    std::cerr << "using scan " << path << "\n";
    return s;
  }
  if (!scan_file.empty()) throw ValidationError("scan file not found: " + scan_file);
  std::cerr << "no scan at " << path << "; scanning\n";
  StabilizationScan s = run_scan(c);
  save_scan(c, s, path, "");
  return s;
}

void print_fit(const std::string& label, const ResonanceFit& f, double alpha_star) {
  std::printf("%-5s curve %2zu  E_r = %.7f  Gamma = %.7f  r2 = %.7f  alpha* = %.4f  [%g, %g]\n",
              label.c_str(), f.curve_index, f.e_r, f.gamma, f.r_squared, alpha_star, f.window.lo,
              f.window.hi);
}

int cmd_bound(const RunConfig& c) {
  const BoundReport r = run_bound(c);
  std::printf("omega %d  N = %lld  alpha = %.10g\n", r.omega,
              static_cast<long long>(r.diagnostics.basis_size), r.alpha);
  std::printf("E0 = %.10f a.u.  (rank %lld, cond %.2e)\n", r.energy,
              static_cast<long long>(r.diagnostics.retained_rank), r.diagnostics.condition_estimate);
  std::printf("S_L = %.8f  S_vN = %.8f  sum-rule deficit %.2e\n", r.entropy.s_linear,
              r.entropy.s_vonneumann, r.entropy.sum_rule_deficit);
  write_file_atomic(out_path(c, "bound" + tag(c) + ".json"), dump(to_json(r)));
  return 0;
}

int cmd_scan(const RunConfig& c) {
  const std::string path = out_path(c, "scan" + tag(c) + ".csv");
  StabilizationScan s;
  try {
    s = run_scan(c);
  } catch (const ScanError& e) {
    save_scan(c, e.partial(), path, "partial failed_alpha=" + std::to_string(e.failed_alpha()));
    throw;
  }
  save_scan(c, s, path, "");
  const auto hints = detect_plateaus(s);
  nlohmann::json states = nlohmann::json::array();
  for (const auto& r : helium_resonances()) {
    const EnergyWindow w = state_window(c, r.label);
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& dc : plateau_candidates(s, w)) {
      cands.push_back({{"curve_index", dc.curve_index},
                       {"window", {{"alpha_lo", dc.window.lo}, {"alpha_hi", dc.window.hi}}},
                       {"points", dc.points.size()}});
    }
    states.push_back({{"label", r.label}, {"energy_window", {w.lo, w.hi}}, {"candidates", cands}});
  }
  const nlohmann::json j = {{"omega", c.omega},
                            {"curves", s.curve_count()},
                            {"grid_points", s.alphas.size()},
                            {"retained_rank", s.retained_rank},
                            {"state_candidates", states},
                            {"flat_stretches", to_json(hints)},
                            {"provenance", to_json(provenance(c, "scan"))}};
  write_file_atomic(out_path(c, "plateaus" + tag(c) + ".json"), dump(j));
  std::printf("omega %d: %zu alpha points, %zu curves below %g a.u., rank %lld -> %s\n", c.omega,
              s.alphas.size(), s.curve_count(), c.energy_ceiling,
              static_cast<long long>(s.retained_rank), path.c_str());
  return 0;
}

struct FitArgs {
  std::string scan_file;
  std::vector<std::string> states;
  std::optional<std::size_t> curve;
  std::vector<double> alpha_window;
};

int cmd_fit(const RunConfig& c, const FitArgs& a) {
  const StabilizationScan s = load_or_run_scan(c, a.scan_file);
  if (a.curve) {
    if (a.alpha_window.size() != 2) throw ValidationError("--curve needs --alpha-window lo,hi");
    const std::string label = a.states.empty() ? "manual" : short_label(a.states.front());
    const DensityCurve dc = density_of_states(s, *a.curve, {a.alpha_window[0], a.alpha_window[1]});
    const ResonanceFit f = fit_lorentzian(dc);
    const double alpha_star = nearest_alpha(s, f.curve_index, f.window, f.e_r);
    std::ostringstream os;
    write_density_csv(os, dc, file_comment(c, "fit"));
    write_file_atomic(out_path(c, "density_" + label + tag(c) + ".csv"), os.str());
    nlohmann::json j = to_json(f);
    j["label"] = label;
    j["alpha_star"] = alpha_star;
    j["provenance"] = to_json(provenance(c, "fit"));
    write_file_atomic(out_path(c, "fit_" + label + tag(c) + ".json"), dump(j));
    print_fit(label, f, alpha_star);
    return 0;
  }
  std::vector<std::string> states = a.states;
  if (states.empty()) {
    for (const auto& r : helium_resonances()) states.push_back(short_label(r.label));
  }
  int failures = 0;
  for (const auto& label : states) {
    try {
      const StateSelection sel = select_state(c, s, label);
      std::ostringstream os;
      write_density_csv(os, sel.density, file_comment(c, "fit"));
      write_file_atomic(out_path(c, "density_" + sel.label + tag(c) + ".csv"), os.str());
      nlohmann::json j = to_json(sel);
      j["provenance"] = to_json(provenance(c, "fit"));
      write_file_atomic(out_path(c, "fit_" + sel.label + tag(c) + ".json"), dump(j));
      print_fit(sel.label, sel.fit.best, sel.alpha_star);
    } catch (const NumericalError& e) {
      std::fprintf(stderr, "%s: %s\n", label.c_str(), e.what());
      ++failures;
    }
  }
  return failures ? 3 : 0;
}

struct StateArgs {
  std::string scan_file;
  std::string state;
  std::optional<double> alpha_star;
  std::optional<std::size_t> curve;
  bool oracle = false;
};

// alpha*, curve and (when fitted here) the resonance for a state.
std::tuple<double, std::size_t, std::optional<ResonanceFit>> locate(const RunConfig& c,
                                                                    const StateArgs& a) {
  if (a.alpha_star.has_value() != a.curve.has_value()) {
    throw ValidationError("--alpha-star and --curve go together");
  }
  if (a.alpha_star) return {*a.alpha_star, *a.curve, std::nullopt};
  const StabilizationScan s = load_or_run_scan(c, a.scan_file);
  const StateSelection sel = select_state(c, s, a.state);
  print_fit(sel.label, sel.fit.best, sel.alpha_star);
  return {sel.alpha_star, sel.fit.best.curve_index, sel.fit.best};
}

int cmd_entropy(const RunConfig& c, const StateArgs& a) {
  const auto [alpha_star, curve, fit] = locate(c, a);
  const StateReport r = run_entropy(c, a.state, alpha_star, curve, fit, a.oracle);
  std::printf("%-5s alpha* = %.4f curve %zu  E = %.7f\n", r.label.c_str(), r.alpha_star,
              r.curve_index, r.energy);
  std::printf("S_L = %.6f  S_vN = %.6f  sum-rule deficit %.2e  rank %lld/%lld\n",
              r.entropy.s_linear, r.entropy.s_vonneumann, r.entropy.sum_rule_deficit,
              static_cast<long long>(r.diagnostics.retained_rank),
              static_cast<long long>(r.diagnostics.basis_size));
  if (r.oracle) {
    std::printf("MC: S_L = %.6f +- %.6f (%lld samples, seed %llu)\n", r.oracle->linear_entropy(),
                r.oracle->standard_error, static_cast<long long>(r.oracle->samples_or_nodes),
                static_cast<unsigned long long>(r.oracle->seed));
  }
  std::ostringstream os;
  write_spectrum_csv(os, r.spectrum);
  write_file_atomic(out_path(c, "spectrum_" + r.label + tag(c) + ".csv"), os.str());
  write_file_atomic(out_path(c, "report_" + r.label + tag(c) + ".json"), dump(to_json(r)));
  return 0;
}

int cmd_check(const RunConfig& c, const StateArgs& a) {
  const auto [alpha_star, curve, fit] = locate(c, a);
  const TraceCheck t = run_check(c, a.state, alpha_star, curve);
  std::printf("%-5s alpha* = %.4f curve %zu\n", t.label.c_str(), t.alpha_star, t.curve_index);
  std::printf("Schmidt       S_L = %.8f\n", t.s_linear_schmidt);
  std::printf("partial wave  S_L = %.8f\n", t.partial_wave.linear_entropy());
  std::printf("Monte Carlo   S_L = %.6f +- %.6f  (%.2f sigma)\n", t.monte_carlo.linear_entropy(),
              t.monte_carlo.standard_error, t.sigma_distance);
  write_file_atomic(out_path(c, "check_" + t.label + tag(c) + ".json"), dump(to_json(t)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helium 1Se resonances (stabilization) and their spatial entanglement"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--omega", o.omega, "basis truncation k+m+n <= omega");
  app.add_option("--Z", o.z, "nuclear charge");
  app.add_option("--alpha-min", o.alpha_min);
  app.add_option("--alpha-max", o.alpha_max);
  app.add_option("--alpha-step", o.alpha_step);
  app.add_option("--energy-ceiling", o.energy_ceiling, "keep curves below this energy (a.u.)");
  app.add_option("--curve-jump", o.curve_jump, "largest allowed step along a curve (a.u.)");
  app.add_flag("--non-interacting", o.non_interacting, "drop 1/r12");
  app.add_option("--l-max", o.l_max);
  app.add_option("--r-max", o.r_max, "radial grid extent (bohr)");
  app.add_option("--nodes", o.nodes, "radial grid nodes");
  app.add_option("--window", o.windows, "energy window override state:e_lo:e_hi");
  app.add_option("--mc-samples", o.mc_samples);
  app.add_option("--mc-seed", o.mc_seed);
  app.add_option("--mc-streams", o.mc_streams);
  app.add_option("--output-dir", o.output_dir);
  app.add_flag("--working-precision", o.working_precision,
               "assemble and solve in double at every alpha");
  app.add_option("--rank-tolerance", o.rank_tolerance);
  app.add_option("--bound-alpha", o.bound_alpha);
  app.add_flag("--optimize-alpha", o.optimize_alpha, "bound: minimize E0 over alpha");
  app.add_flag("--dump-config", o.dump_config, "print the effective config and exit");

  auto* bound = app.add_subcommand("bound", "ground state at fixed alpha");
  auto* scan_cmd = app.add_subcommand("scan", "eigenvalue curves over the alpha grid");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "density of states and Lorentzian fit");
  fit->add_option("--scan", fa.scan_file, "scan CSV (default <output-dir>/scan_w<omega>.csv)");
  fit->add_option("--state", fa.states, "2s2, 2p2, 2s3s (default all)");
  fit->add_option("--curve", fa.curve, "manual: curve index");
  fit->add_option("--alpha-window", fa.alpha_window, "manual: alpha range lo,hi")->delimiter(',');

  StateArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Schmidt-Slater entropies of a resonance");
  StateArgs ca;
  auto* check = app.add_subcommand("check", "purity by Monte Carlo vs Schmidt-Slater");
  for (auto [cmd, args] : {std::pair{entropy, &ea}, std::pair{check, &ca}}) {
    cmd->add_option("--state", args->state, "2s2, 2p2, 2s3s")->required();
    cmd->add_option("--scan", args->scan_file);
    cmd->add_option("--alpha-star", args->alpha_star, "override alpha*");
    cmd->add_option("--curve", args->curve, "curve index (with --alpha-star)");
  }
  entropy->add_flag("--oracle", ea.oracle, "add the Monte Carlo purity estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig c = effective_config(o);
    if (o.dump_config) {
      std::cout << dump(to_json(c));
      return 0;
    }
    if (*bound) return cmd_bound(c);
    if (*scan_cmd) return cmd_scan(c);
    if (*fit) return cmd_fit(c, fa);
    if (*entropy) return cmd_entropy(c, ea);
    if (*check) return cmd_check(c, ca);
    std::fprintf(stderr, "error: a subcommand is required (bound, scan, fit, entropy, check)\n");
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
