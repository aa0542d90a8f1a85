#pragma once

// Run configuration shared by every command. Every field has a default, and
// the serialized form always lists all of them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hent {

struct WindowOverride {
  std::string state;  ///< "2s2", "2p2", "2s3s" or a new label
  double e_lo = 0.0;
  double e_hi = 0.0;
  bool operator==(const WindowOverride&) const = default;
};

struct RunConfig {
  int omega = 9;
  double z = 2.0;
  double alpha_min = 0.2;
  double alpha_max = 1.6;
  double alpha_step = 0.002;
  double energy_ceiling = -0.5;
  double curve_jump_threshold = 0.1;
  bool interaction = true;
  int l_max = 40;
  double grid_r_max = 60.0;
  int grid_nodes = 240;
  std::vector<WindowOverride> windows;
  std::int64_t mc_samples = 10'000'000;
  std::uint64_t mc_seed = 20150306;
  int mc_streams = 64;
  std::string output_dir = ".";
  bool extended_precision = true;
  double rank_tolerance = 0.0;  ///< 0: 1e-24 extended, 1e-12 double
  double bound_alpha = 1.8;
  bool bound_optimize_alpha = false;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// FNV-1a over the canonical JSON text without output_dir, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::string code_version();

}  // namespace hent
