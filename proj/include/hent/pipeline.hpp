#pragma once

// End-to-end steps behind the he_entangle subcommands: ground state, alpha
// scan, plateau fit, entropies at the chosen alpha, and the purity check.

#include <optional>
#include <string>

#include <json.hpp>

#include "hent/basis.hpp"
#include "hent/config.hpp"
#include "hent/oracle.hpp"
#include "hent/schmidt.hpp"
#include "hent/stabilization.hpp"

namespace hent {

struct Provenance {
  std::string config_hash;
  std::string version;
  std::string command;
};

Provenance provenance(const RunConfig& config, const std::string& command);

struct Diagnostics {
  Eigen::Index basis_size = 0;
  Eigen::Index retained_rank = 0;
  double condition_estimate = 0.0;
  bool extended_precision = true;
};

/// Eigenstate `index` at alpha = beta for the configured basis, normalized.
struct SolvedState {
  HylleraasWavefunction psi;
  double energy = 0.0;
  Diagnostics diagnostics;
};
SolvedState solve_state(const RunConfig& config, double alpha, std::size_t index);

struct BoundReport {
  int omega = 0;
  double alpha = 0.0;
  double energy = 0.0;
  EntropyResult entropy;
  Diagnostics diagnostics;
  Provenance provenance;
};
BoundReport run_bound(const RunConfig& config);

StabilizationScan run_scan(const RunConfig& config);

/// "2s2" or "2s2-1Se" etc.; the configured override wins over the catalog.
EnergyWindow state_window(const RunConfig& config, const std::string& label);
std::string short_label(const std::string& label);

struct StateSelection {
  std::string label;
  EnergyWindow energy_window;
  StateFit fit;
  DensityCurve density;  ///< of the best candidate
  double alpha_star = 0.0;
};

/// Plateau fit in the state's window and alpha* = grid alpha nearest E_r on
/// the best curve.
StateSelection select_state(const RunConfig& config, const StabilizationScan& scan,
                            const std::string& label);

struct StateReport {
  std::string label;
  int omega = 0;
  std::optional<ResonanceFit> resonance;
  double alpha_star = 0.0;
  std::size_t curve_index = 0;
  double energy = 0.0;  ///< eigenvalue at alpha*
  EntropyResult entropy;
  TraceEstimate purity;  ///< partial-wave identity
  std::optional<TraceEstimate> oracle;
  SchmidtSpectrum spectrum;  ///< occupations only, no kernels
  double grid_r_max = 0.0;
  int grid_nodes = 0;
  Diagnostics diagnostics;
  Provenance provenance;
};

StateReport run_entropy(const RunConfig& config, const std::string& label, double alpha_star,
                        std::size_t curve_index, std::optional<ResonanceFit> resonance,
                        bool with_oracle);

struct TraceCheck {
  std::string label;
  double alpha_star = 0.0;
  std::size_t curve_index = 0;
  double s_linear_schmidt = 0.0;
  TraceEstimate partial_wave;
  TraceEstimate monte_carlo;
  double sigma_distance = 0.0;  ///< |S_L(MC) - S_L(Schmidt)| / SE
  Provenance provenance;
};

TraceCheck run_check(const RunConfig& config, const std::string& label, double alpha_star,
                     std::size_t curve_index);

nlohmann::json to_json(const Provenance& p);
nlohmann::json to_json(const Diagnostics& d);
nlohmann::json to_json(const ResonanceFit& f);
nlohmann::json to_json(const EntropyResult& e);
nlohmann::json to_json(const TraceEstimate& t);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const StateReport& r);
nlohmann::json to_json(const TraceCheck& c);
nlohmann::json to_json(const StateSelection& s);
nlohmann::json to_json(const std::vector<PlateauHint>& hints);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hent
