#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hent/config.hpp"
#include "hent/error.hpp"
#include "hent/pipeline.hpp"

using namespace hent;
using nlohmann::json;

TEST_CASE("defaults are valid and survive a round trip") {
  RunConfig c;
  validate(c);
  CHECK(config_from_json(to_json(c)) == c);
  c.omega = 11;
  c.windows.push_back({"2s2", -0.8, -0.76});
  c.mc_seed = 0xffffffffffffULL;
  c.extended_precision = false;
  CHECK(config_from_json(to_json(c)) == c);
  CHECK(config_from_json(json::parse(to_json(c).dump())) == c);
}

TEST_CASE("partial documents keep defaults") {
  const auto c = config_from_json(json::parse(R"({"omega": 7, "grid": {"nodes": 100}})"));
  CHECK(c.omega == 7);
  CHECK(c.grid_nodes == 100);
  CHECK(c.grid_r_max == RunConfig{}.grid_r_max);
}

TEST_CASE("unknown keys and wrong types are rejected") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"omgea": 7})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"mc": {"sample": 7}})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"omega": "nine"})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"([1, 2])")), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/he.json"), ValidationError);
}

TEST_CASE("validation names the field") {
  auto expect = [](RunConfig c, const std::string& field) {
    try {
      validate(c);
      FAIL("accepted");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("'" + field + "'") != std::string::npos);
    }
  };
  RunConfig c;
  c.alpha_max = c.alpha_min;
  expect(c, "alpha_max");
  c = {};
  c.omega = -1;
  expect(c, "omega");
  c = {};
  c.mc_samples = 10;
  expect(c, "mc.samples");
  c = {};
  c.grid_nodes = 2;
  expect(c, "grid.nodes");
  c = {};
  c.windows.push_back({"2s2", -0.7, -0.8});
  expect(c, "windows.2s2");
}

TEST_CASE("config hash") {
  RunConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.output_dir = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.mc_seed += 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("config file on disk") {
  const auto path = std::filesystem::temp_directory_path() / "hent_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"omega": 8, "windows": [{"state": "2p2", "e_lo": -0.63, "e_hi": -0.62}]})";
  }
  const auto c = load_config(path.string());
  CHECK(c.omega == 8);
  CHECK(state_window(c, "2p2") == EnergyWindow{-0.63, -0.62});
  CHECK(state_window(c, "2s2-1Se") == find_resonance("2s2").window);
  std::filesystem::remove(path);
}

TEST_CASE("double and extended solves agree on a small basis") {
  RunConfig c;
  c.omega = 6;
  const auto e = solve_state(c, 1.8, 0);
  c.extended_precision = false;
  const auto d = solve_state(c, 1.8, 0);
  CHECK(e.energy == doctest::Approx(d.energy).epsilon(1e-10));
  CHECK(e.diagnostics.basis_size == 50);
  CHECK(e.psi.normalized());
}

TEST_CASE("bound run") {
  RunConfig c;
  c.omega = 6;
  const auto r = run_bound(c);
  CHECK(r.energy >= -2.90373);
  CHECK(r.energy <= -2.90340);
  CHECK(std::fabs(r.entropy.sum_rule_deficit) < 1e-6);
  CHECK(to_json(r)["provenance"]["config_hash"] == config_hash(c));
}

TEST_CASE("pipeline is deterministic") {
  RunConfig c;
  c.omega = 7;
  c.grid_nodes = 120;
  c.l_max = 12;
  c.mc_samples = 20'000;
  c.mc_streams = 4;
  const auto s = run_scan(c);
  const auto sel = select_state(c, s, "2s2");
  const auto r1 = run_entropy(c, "2s2", sel.alpha_star, sel.fit.best.curve_index, sel.fit.best, true);
  const auto r2 = run_entropy(c, "2s2", sel.alpha_star, sel.fit.best.curve_index, sel.fit.best, true);
  CHECK(to_json(r1).dump() == to_json(r2).dump());
  CHECK(r1.oracle.has_value());
  CHECK(std::fabs(r1.purity.linear_entropy() - r1.entropy.s_linear) < 1e-10);
}

TEST_CASE("atomic write creates directories") {
  const auto dir = std::filesystem::temp_directory_path() / "hent_test_out" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_file_atomic((dir / "x.txt").string(), "abc");
  std::ifstream in(dir / "x.txt");
  std::string s;
  in >> s;
  CHECK(s == "abc");
  std::filesystem::remove_all(dir.parent_path());
}
