#include "hent/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "hent/eigensolver.hpp"
#include "hent/error.hpp"

namespace hent {

namespace {

double rank_tolerance(const RunConfig& c) {
  return c.rank_tolerance > 0.0 ? c.rank_tolerance : default_rank_tolerance(c.extended_precision);
}

ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.energy_ceiling = c.energy_ceiling;
  o.curve_jump_threshold = c.curve_jump_threshold;
  o.assemble.interaction = c.interaction;
  o.extended_precision = c.extended_precision;
  o.rank_tolerance = rank_tolerance(c);
  return o;
}

EntropyResult state_entropies(const RunConfig& c, const HylleraasWavefunction& psi,
                              TraceEstimate* purity, SchmidtSpectrum* keep) {
  const RadialGrid grid = RadialGrid::gauss_legendre(c.grid_nodes, c.grid_r_max);
  DecomposeOptions opts;
  opts.keep_kernels = purity != nullptr;
  SchmidtSpectrum spec = decompose(partial_wave_kernels(psi, grid, c.l_max), opts);
  if (purity) *purity = trace_rho_squared_pw(spec);
  EntropyResult e = entropies(spec);
  if (keep) {
    spec.kernels.reset();
    *keep = std::move(spec);
  }
  return e;
}

// Golden-section search for the lowest ground-state energy in alpha.
double optimize_alpha(const DilationFamily& family, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = family.energies(x1)[0], f2 = family.energies(x2)[0];
  while (b - a > 1e-9) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = family.energies(x1)[0];
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = family.energies(x2)[0];
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Provenance provenance(const RunConfig& config, const std::string& command) {
  return {config_hash(config), code_version(), command};
}

SolvedState solve_state(const RunConfig& c, double alpha, std::size_t index) {
  validate(c);
  if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
  AssembleOptions ao;
  ao.interaction = c.interaction;
  const SolverOptions so{rank_tolerance(c)};
  Diagnostics d;
  d.basis_size = static_cast<Eigen::Index>(term_count(c.omega));
  d.extended_precision = c.extended_precision;
  const auto idx = static_cast<Eigen::Index>(index);
  if (c.extended_precision) {
    const DilationFamily family(assemble_unit_scale(c.omega), c.z, ao, so);
    d.retained_rank = family.retained_rank();
    d.condition_estimate = family.condition_estimate();
    const Eigen::VectorXd e = family.energies(alpha);
    if (idx >= e.size()) throw ValidationError("state index beyond the retained spectrum");
    return {family.state(alpha, idx), e[idx], d};
  }
  const MatrixPair mp = assemble(c.omega, alpha, alpha, c.z, ao);
  const SpectrumResult r = solve(mp, so);
  d.retained_rank = r.retained_rank;
  d.condition_estimate = r.condition_estimate;
  if (idx >= r.energies.size()) throw ValidationError("state index beyond the retained spectrum");
  HylleraasWavefunction psi(mp.terms, r.coefficients.col(idx), alpha, alpha, c.z);
  return {normalize(psi, mp), r.energies[idx], d};
}

BoundReport run_bound(const RunConfig& c) {
  validate(c);
  BoundReport r;
  r.omega = c.omega;
  r.alpha = c.bound_alpha;
  if (c.bound_optimize_alpha) {
    AssembleOptions ao;
    ao.interaction = c.interaction;
    const DilationFamily family(assemble_unit_scale(c.omega), c.z, ao,
                                SolverOptions{default_rank_tolerance(true)});
    r.alpha = optimize_alpha(family, 0.2, 3.0 * c.z);
  }
  const SolvedState s = solve_state(c, r.alpha, 0);
  r.energy = s.energy;
  r.diagnostics = s.diagnostics;
  r.entropy = state_entropies(c, s.psi, nullptr, nullptr);
  r.provenance = provenance(c, "bound");
  return r;
}

StabilizationScan run_scan(const RunConfig& c) {
  validate(c);
  return scan(c.omega, c.alpha_min, c.alpha_max, c.alpha_step, c.z, scan_options(c));
}

std::string short_label(const std::string& label) { return label.substr(0, label.find('-')); }

EnergyWindow state_window(const RunConfig& c, const std::string& label) {
  for (const auto& w : c.windows) {
    if (short_label(w.state) == short_label(label)) return {w.e_lo, w.e_hi};
  }
  return find_resonance(label).window;
}

StateSelection select_state(const RunConfig& c, const StabilizationScan& scan,
                            const std::string& label) {
  StateSelection s;
  s.label = short_label(label);
  s.energy_window = state_window(c, label);
  s.fit = fit_state(scan, s.energy_window);
  const ResonanceFit& best = s.fit.best;
  s.density = density_of_states(scan, best.curve_index, best.window);
  s.alpha_star = nearest_alpha(scan, best.curve_index, best.window, best.e_r);
  return s;
}

StateReport run_entropy(const RunConfig& c, const std::string& label, double alpha_star,
                        std::size_t curve_index, std::optional<ResonanceFit> resonance,
                        bool with_oracle) {
  validate(c);
  StateReport r;
  r.label = short_label(label);
  r.omega = c.omega;
  r.resonance = std::move(resonance);
  r.alpha_star = alpha_star;
  r.curve_index = curve_index;
  const SolvedState s = solve_state(c, alpha_star, curve_index);
  r.energy = s.energy;
  r.diagnostics = s.diagnostics;
  r.entropy = state_entropies(c, s.psi, &r.purity, &r.spectrum);
  r.grid_r_max = c.grid_r_max;
  r.grid_nodes = c.grid_nodes;
  if (with_oracle) {
    MonteCarloOptions mo;
    mo.samples = c.mc_samples;
    mo.seed = c.mc_seed;
    mo.streams = c.mc_streams;
    r.oracle = trace_rho_squared_mc(s.psi, mo);
  }
  r.provenance = provenance(c, "entropy");
  return r;
}

TraceCheck run_check(const RunConfig& c, const std::string& label, double alpha_star,
                     std::size_t curve_index) {
  const StateReport r = run_entropy(c, label, alpha_star, curve_index, std::nullopt, true);
  TraceCheck t;
  t.label = r.label;
  t.alpha_star = alpha_star;
  t.curve_index = curve_index;
  t.s_linear_schmidt = r.entropy.s_linear;
  t.partial_wave = r.purity;
  t.monte_carlo = *r.oracle;
  const double diff = std::fabs(t.monte_carlo.linear_entropy() - t.s_linear_schmidt);
  t.sigma_distance = t.monte_carlo.standard_error > 0.0 ? diff / t.monte_carlo.standard_error
                                                        : (diff == 0.0 ? 0.0 : INFINITY);
  t.provenance = provenance(c, "check");
  return t;
}

nlohmann::json to_json(const Provenance& p) {
  return {{"config_hash", p.config_hash}, {"version", p.version}, {"command", p.command}};
}

nlohmann::json to_json(const Diagnostics& d) {
  return {{"basis_size", d.basis_size},
          {"retained_rank", d.retained_rank},
          {"condition_estimate", d.condition_estimate},
          {"extended_precision", d.extended_precision}};
}

nlohmann::json to_json(const ResonanceFit& f) {
  return {{"e_r", f.e_r},
          {"gamma", f.gamma},
          {"a", f.a},
          {"b", f.b},
          {"r_squared", f.r_squared},
          {"residual_norm", f.residual_norm},
          {"window", {{"alpha_lo", f.window.lo}, {"alpha_hi", f.window.hi}}},
          {"curve_index", f.curve_index},
          {"points", f.points},
          {"iterations", f.iterations}};
}

nlohmann::json to_json(const EntropyResult& e) {
  return {{"s_linear", e.s_linear},
          {"s_vonneumann", e.s_vonneumann},
          {"l_max", e.l_max_used},
          {"sum_rule_deficit", e.sum_rule_deficit},
          {"tail_vonneumann", e.tail_vonneumann},
          {"tail_norm", e.tail_norm}};
}

nlohmann::json to_json(const TraceEstimate& t) {
  nlohmann::json j = {{"value", t.value},
                      {"standard_error", t.standard_error},
                      {"samples_or_nodes", t.samples_or_nodes},
                      {"method", to_string(t.method)},
                      {"s_linear", t.linear_entropy()}};
  if (t.method == TraceMethod::monte_carlo) j["seed"] = t.seed;
  return j;
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"omega", r.omega},
          {"alpha", r.alpha},
          {"energy", r.energy},
          {"entropy", to_json(r.entropy)},
          {"diagnostics", to_json(r.diagnostics)},
          {"provenance", to_json(r.provenance)}};
}

nlohmann::json to_json(const StateReport& r) {
  nlohmann::json j = {{"label", r.label + "-1Se"},
                      {"omega", r.omega},
                      {"alpha_star", r.alpha_star},
                      {"curve_index", r.curve_index},
                      {"energy", r.energy},
                      {"entropy", to_json(r.entropy)},
                      {"grid", {{"r_max", r.grid_r_max}, {"nodes", r.grid_nodes}}},
                      {"purity_partial_wave", to_json(r.purity)},
                      {"diagnostics", to_json(r.diagnostics)},
                      {"provenance", to_json(r.provenance)}};
  j["resonance"] = r.resonance ? to_json(*r.resonance) : nlohmann::json(nullptr);
  j["oracle"] = r.oracle ? to_json(*r.oracle) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const TraceCheck& c) {
  return {{"label", c.label + "-1Se"},
          {"alpha_star", c.alpha_star},
          {"curve_index", c.curve_index},
          {"s_linear_schmidt", c.s_linear_schmidt},
          {"partial_wave", to_json(c.partial_wave)},
          {"monte_carlo", to_json(c.monte_carlo)},
          {"sigma_distance", c.sigma_distance},
          {"provenance", to_json(c.provenance)}};
}

nlohmann::json to_json(const StateSelection& s) {
  nlohmann::json j = to_json(s.fit.best);
  j["label"] = s.label + "-1Se";
  j["energy_window"] = {{"e_lo", s.energy_window.lo}, {"e_hi", s.energy_window.hi}};
  j["alpha_star"] = s.alpha_star;
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& f : s.fit.candidates) cands.push_back(to_json(f));
  j["candidates"] = cands;
  return j;
}

nlohmann::json to_json(const std::vector<PlateauHint>& hints) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& h : hints) {
    a.push_back({{"curve_index", h.curve_index},
                 {"window", {{"alpha_lo", h.window.lo}, {"alpha_hi", h.window.hi}}},
                 {"energy_min", h.energy_min},
                 {"energy_max", h.energy_max},
                 {"points", h.points}});
  }
  return a;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw ValidationError("cannot create directory " + target.parent_path().string());
  }
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot move output into place at " + path);
  }
}

}  // namespace hent
