#include "hent/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hent/error.hpp"

#ifndef HENT_VERSION
#define HENT_VERSION "0.0.0"
#endif

namespace hent {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "': " + why);
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(key, std::string("wrong type (") + e.what() + ")");
  }
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.omega < 0 || c.omega > 16) bad("omega", "must be in 0..16");
  if (!(c.z > 0.0) || !std::isfinite(c.z)) bad("Z", "must be positive");
  if (!(c.alpha_min > 0.0)) bad("alpha_min", "must be > 0");
  if (!(c.alpha_max > c.alpha_min)) bad("alpha_max", "must exceed alpha_min");
  if (!(c.alpha_step > 0.0)) bad("alpha_step", "must be > 0");
  if ((c.alpha_max - c.alpha_min) / c.alpha_step < 2.0 - 1e-9) {
    bad("alpha_step", "grid must have at least 3 points");
  }
  if (!std::isfinite(c.energy_ceiling)) bad("energy_ceiling", "must be finite");
  if (!(c.curve_jump_threshold > 0.0)) bad("curve_jump_threshold", "must be > 0");
  if (c.l_max < 0 || c.l_max > 200) bad("l_max", "must be in 0..200");
  if (!(c.grid_r_max > 0.0)) bad("grid.r_max", "must be > 0");
  if (c.grid_nodes < 8 || c.grid_nodes > 4000) bad("grid.nodes", "must be in 8..4000");
  for (const auto& w : c.windows) {
    if (w.state.empty()) bad("windows.state", "must not be empty");
    if (!(w.e_hi > w.e_lo)) bad("windows." + w.state, "e_hi must exceed e_lo");
  }
  if (c.mc_samples < 10'000) bad("mc.samples", "must be >= 10000");
  if (c.mc_streams < 1 || c.mc_streams > 4096) bad("mc.streams", "must be in 1..4096");
  if (c.output_dir.empty()) bad("output_dir", "must not be empty");
  if (c.rank_tolerance < 0.0 || c.rank_tolerance >= 1.0) bad("rank_tolerance", "must be in [0, 1)");
  if (!(c.bound_alpha > 0.0)) bad("bound.alpha", "must be > 0");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : c.windows) {
    windows.push_back({{"state", w.state}, {"e_lo", w.e_lo}, {"e_hi", w.e_hi}});
  }
  return {
      {"omega", c.omega},
      {"Z", c.z},
      {"alpha_min", c.alpha_min},
      {"alpha_max", c.alpha_max},
      {"alpha_step", c.alpha_step},
      {"energy_ceiling", c.energy_ceiling},
      {"curve_jump_threshold", c.curve_jump_threshold},
      {"interaction", c.interaction},
      {"l_max", c.l_max},
      {"grid", {{"r_max", c.grid_r_max}, {"nodes", c.grid_nodes}}},
      {"windows", windows},
      {"mc", {{"samples", c.mc_samples}, {"seed", c.mc_seed}, {"streams", c.mc_streams}}},
      {"output_dir", c.output_dir},
      {"precision", {{"extended", c.extended_precision}, {"rank_tolerance", c.rank_tolerance}}},
      {"bound", {{"alpha", c.bound_alpha}, {"optimize_alpha", c.bound_optimize_alpha}}},
  };
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  static const std::set<std::string> known = {
      "omega", "Z",    "alpha_min", "alpha_max", "alpha_step", "energy_ceiling",
      "curve_jump_threshold", "interaction", "l_max", "grid", "windows", "mc",
      "output_dir", "precision", "bound"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) bad(key, "unknown key");
  }
  RunConfig c;
  read(j, "omega", c.omega);
  read(j, "Z", c.z);
  read(j, "alpha_min", c.alpha_min);
  read(j, "alpha_max", c.alpha_max);
  read(j, "alpha_step", c.alpha_step);
  read(j, "energy_ceiling", c.energy_ceiling);
  read(j, "curve_jump_threshold", c.curve_jump_threshold);
  read(j, "interaction", c.interaction);
  read(j, "l_max", c.l_max);
  read(j, "output_dir", c.output_dir);
  auto section = [&](const char* name, const std::set<std::string>& keys) -> nlohmann::json {
    if (!j.contains(name)) return nlohmann::json::object();
    const auto& s = j.at(name);
    if (!s.is_object()) bad(name, "must be an object");
    for (const auto& [key, value] : s.items()) {
      if (!keys.count(key)) bad(std::string(name) + "." + key, "unknown key");
    }
    return s;
  };
  const auto grid = section("grid", {"r_max", "nodes"});
  read(grid, "r_max", c.grid_r_max);
  read(grid, "nodes", c.grid_nodes);
  const auto mc = section("mc", {"samples", "seed", "streams"});
  read(mc, "samples", c.mc_samples);
  read(mc, "seed", c.mc_seed);
  read(mc, "streams", c.mc_streams);
  const auto precision = section("precision", {"extended", "rank_tolerance"});
  read(precision, "extended", c.extended_precision);
  read(precision, "rank_tolerance", c.rank_tolerance);
  const auto bound = section("bound", {"alpha", "optimize_alpha"});
  read(bound, "alpha", c.bound_alpha);
  read(bound, "optimize_alpha", c.bound_optimize_alpha);
  if (j.contains("windows")) {
    const auto& ws = j.at("windows");
    if (!ws.is_array()) bad("windows", "must be an array");
    for (const auto& w : ws) {
      WindowOverride o;
      if (!w.is_object()) bad("windows", "entries must be objects");
      read(w, "state", o.state);
      read(w, "e_lo", o.e_lo);
      read(w, "e_hi", o.e_hi);
      c.windows.push_back(o);
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config file '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const RunConfig& config) {
  auto j = to_json(config);
  j.erase("output_dir");  // where results go does not change them
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string code_version() { return HENT_VERSION; }

}  // namespace hent
