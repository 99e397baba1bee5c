#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hyperflow/experiments.hpp"

using namespace hyperflow;

namespace {

ExperimentConfig tiny_burgers() {
  ExperimentConfig c;
  c.model = "burgers";
  c.grid_points = 32;
  c.s = 2.0;
  c.T = 0.2;
  c.dt = 5e-3;
  c.n_max = 2;
  c.record_every = 10;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config JSON round trip preserves every field") {
  ExperimentConfig c = tiny_burgers();
  c.model = "epm_torus";
  c.seed = 987;
  c.use_weighted_norm = true;
  c.output_csv = "a.csv";
  ExperimentConfig back = ExperimentConfig::from_json_text(c.to_json_text());
  CHECK(back.model == c.model);
  CHECK(back.seed == c.seed);
  CHECK(back.use_weighted_norm == c.use_weighted_norm);
  CHECK(back.grid_points == c.grid_points);
  CHECK(back.dt == doctest::Approx(c.dt));
  CHECK(back.output_csv == c.output_csv);
  CHECK(back.config_hash() == c.config_hash());
  CHECK(back.config_hash() != tiny_burgers().config_hash());
}

TEST_CASE("partial configs fall back to defaults") {
  ExperimentConfig c = ExperimentConfig::from_json_text(R"({"model":"advection"})");
  CHECK(c.model == "advection");
  CHECK(c.grid_points == ExperimentConfig{}.grid_points);
  CHECK(c.seed == ExperimentConfig{}.seed);
}

TEST_CASE("model factory covers every model name and rejects unknowns") {
  for (const char* m : {"burgers", "advection", "epm_torus", "epm_compact", "cosmo"}) {
    ExperimentConfig c;
    c.model = m;
    SystemModel sys = make_model(c);
    CHECK(sys.name == m);
    RealField u0 = make_initial_data(c);
    CHECK(u0.ncomp() == sys.ncomp);
    CHECK(u0.grid().dim == sys.dim);
    RealField dir = make_perturbation_direction(c);
    CHECK(dir.ncomp() == sys.ncomp);
  }
  ExperimentConfig bad;
  bad.model = "nope";
  CHECK_THROWS(make_model(bad));
}

TEST_CASE("flow-map run: perturbation distances shrink with the amplitude") {
  RunRecord rec = run_flowmap(tiny_burgers());
  REQUIRE(rec.rows.size() == 3);
  CHECK(!rec.base_aborted);
  for (const FlowMapRow& r : rec.rows) {
    CHECK(r.status == "ok");
    CHECK(r.d0_norm > 0.0);
    CHECK(r.sup_diff > 0.0);
  }
  CHECK(rec.rows[1].sup_diff < rec.rows[0].sup_diff);
  CHECK(rec.rows[2].sup_diff < rec.rows[1].sup_diff);
  // near-Lipschitz dependence on data for smooth small solutions
  CHECK(rec.fitted_theta > 0.8);
  CHECK(rec.fitted_theta < 1.2);
}

TEST_CASE("flow-map run is deterministic for a fixed config") {
  RunRecord a = run_flowmap(tiny_burgers());
  RunRecord b = run_flowmap(tiny_burgers());
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].d0_norm == b.rows[i].d0_norm);
    CHECK(a.rows[i].sup_diff == b.rows[i].sup_diff);
  }
}

TEST_CASE("worker fan-out matches the serial result") {
  ExperimentConfig serial = tiny_burgers();
  ExperimentConfig parallel = tiny_burgers();
  parallel.threads = 3;
  RunRecord a = run_flowmap(serial);
  RunRecord b = run_flowmap(parallel);
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    CHECK(a.rows[i].sup_diff == b.rows[i].sup_diff);
}

TEST_CASE("CSV output is CRLF-terminated with the documented header") {
  RunRecord rec = run_flowmap(tiny_burgers());
  std::string path = "flowmap_test_out.csv";
  emit_csv(rec, path);
  std::string text = slurp(path);
  CHECK(text.rfind("n,eps,d0_norm,sup_diff,status\r\n", 0) == 0);
  CHECK(text.find("\r\n") != std::string::npos);
  // one line per row plus the header
  std::size_t lines = 0;
  for (std::size_t p = 0; (p = text.find("\r\n", p)) != std::string::npos; ++p) ++lines;
  CHECK(lines == rec.rows.size() + 1);
  std::remove(path.c_str());
}

TEST_CASE("JSON output echoes the config and carries a stable hash") {
  RunRecord rec = run_flowmap(tiny_burgers());
  std::string path = "flowmap_test_out.json";
  emit_json(rec, path);
  nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["config"]["model"] == "burgers");
  CHECK(j["seed"] == rec.config.seed);
  CHECK(j["config_hash"] == rec.config.config_hash());
  CHECK(j["rows"].size() == rec.rows.size());
  CHECK(j["per_time_diff"].size() == rec.rows.size());
  std::remove(path.c_str());
}

TEST_CASE("modulus-of-continuity sweep returns one exponent per index") {
  ExperimentConfig c = tiny_burgers();
  c.n_max = 2;
  HolderReport rep = run_holder_probe(c, {1.5, 2.0});
  REQUIRE(rep.points.size() == 2);
  for (const HolderPoint& p : rep.points) {
    CHECK(p.rows.size() == 3);
    CHECK(std::isfinite(p.theta));
  }
}

TEST_CASE("energy check: norm-preserving transport needs no growth constant") {
  ExperimentConfig c;
  c.model = "advection";
  c.grid_points = 32;
  c.s = 2.0;
  c.T = 0.5;
  c.dt = 5e-3;
  EnergyCheckReport rep = run_energy_check(c);
  CHECK(!rep.a0_variant);
  CHECK(rep.c_min_s == 0.0);
  CHECK(rep.c_min_s_refined == 0.0);
  CHECK(rep.refinement_stable);
}

TEST_CASE("estimate suite report is finite and refinement-stable") {
  std::string text = run_estimate_suite_json(7, 2, 64);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["all_finite"] == true);
  for (const char* k : {"kato_ponce", "multiplication", "power", "difference"}) {
    CHECK(j[k]["ratio"].get<double>() > 0.0);
    CHECK(j[k]["relative_change"].get<double>() < 0.25);
  }
}
