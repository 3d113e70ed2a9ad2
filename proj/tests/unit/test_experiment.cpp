#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "uavrelay/errors.hpp"
#include "uavrelay/experiment.hpp"

using namespace uavrelay;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A small world and a short run so the command tests finish quickly.
ExperimentSpec tiny_spec(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "uavrelay_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  Scenario s = generate_scenario(5, 4, 3, 60);
  s.paa.rows = s.paa.cols = 2;
  save_scenario(finalize(s), dir / "scenario.json");
  OptimizerConfig c;
  c.pop_size = 6;
  c.iter_max = 3;
  c.hv_samples = 1000;
  std::ofstream(dir / "config.json") << optimizer_config_to_json(c).dump();

  ExperimentSpec spec;
  spec.scenario_path = dir / "scenario.json";
  spec.config_path = dir / "config.json";
  spec.out_dir = dir / "out";
  spec.quad_deg = 15.0;
  spec.hv_samples = 2000;
  spec.threads = 1;
  return spec;
}

}  // namespace

TEST_CASE("FNV-1a reference vectors") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
}

TEST_CASE("median") {
  CHECK(median({}) == 0.0);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
}

TEST_CASE("a front scored against itself gets the same hypervolume") {
  const std::vector<ObjectiveVector> f{{-3, 1, 2}, {-1, 0.5, 4}, {-2, 2, 1}};
  const std::vector<std::vector<ObjectiveVector>> fronts{f, f};
  const auto hv = shared_hypervolumes(fronts, 5000, 7);
  CHECK(hv[0] == hv[1]);
  CHECK(hv[0] / hv[1] == 1.0);
}

TEST_CASE("representative prefers feasible members near the ideal point") {
  // Normalized over the feasible three: (0, 1/6, 1/6), (1, 0, 0), (1/4, 1, 1).
  std::vector<EvaluatedSolution> a(4);
  a[0].objectives = {-10, 0, 0};
  a[0].feasible = false;
  a[1].objectives = {-5, 1.5, 1.5};
  a[2].objectives = {-1, 1, 1};
  a[3].objectives = {-4, 4, 4};
  CHECK(representative_index(a) == 1);
  CHECK_THROWS_AS(representative_index(std::vector<EvaluatedSolution>{}), ValidationError);
}

TEST_CASE("mogoa config has every improvement off") {
  auto spec = tiny_spec("algo");
  spec.algo = "mogoa";
  const auto c = load_experiment_config(spec);
  CHECK_FALSE(c.toggles.h3c_init);
  CHECK_FALSE(c.toggles.nonlinear_c);
  CHECK_FALSE(c.toggles.levy);
  CHECK_FALSE(c.toggles.archive_mutation);
  CHECK_FALSE(c.toggles.dcde);
  CHECK(c.pop_size == 6);
  spec.algo = "imogoa";
  CHECK(load_experiment_config(spec).toggles.levy);
}

TEST_CASE("run writes one archive per seed, a summary, and is reproducible") {
  auto spec = tiny_spec("run");
  spec.seeds = {1, 2};
  std::ostringstream log;
  REQUIRE(cmd_run(spec, log) == 0);
  for (const char* f : {"archive_seed1.csv", "archive_seed2.csv", "trace_seed1.csv", "trace_seed2.csv", "summary.csv",
                        "trajectory_seed1.csv", "effective_config.json"})
    CHECK(fs::exists(spec.out_dir / f));

  // Every CSV has a header and a sidecar naming its seed or config hash.
  for (const auto& e : fs::directory_iterator(spec.out_dir)) {
    if (e.path().extension() != ".csv") continue;
    const auto text = slurp(e.path());
    CHECK(text.find('\n') != std::string::npos);
    const fs::path side = e.path().string() + ".json";
    REQUIRE(fs::exists(side));
    const auto meta = nlohmann::json::parse(slurp(side));
    CHECK(meta.contains("config_hash"));
    CHECK(meta.contains("version"));
  }
  const auto side = nlohmann::json::parse(slurp(spec.out_dir / "archive_seed2.csv.json"));
  CHECK(side.at("seed") == 2);

  const auto first_archive = slurp(spec.out_dir / "archive_seed1.csv");
  const auto first_trace = slurp(spec.out_dir / "trace_seed1.csv");
  CHECK(first_archive.rfind("f1,f2,f3,", 0) == 0);
  spec.threads = 2;
  REQUIRE(cmd_run(spec, log) == 0);
  CHECK(slurp(spec.out_dir / "archive_seed1.csv") == first_archive);
  CHECK(slurp(spec.out_dir / "trace_seed1.csv") == first_trace);
}

TEST_CASE("zero-iteration run scores the initial front") {
  auto spec = tiny_spec("zero");
  OptimizerConfig c;
  c.pop_size = 6;
  c.iter_max = 0;
  std::ofstream(spec.config_path) << optimizer_config_to_json(c).dump();
  spec.algo = "mogoa";
  std::ostringstream log;
  CHECK(cmd_run(spec, log) == 0);
  const auto summary = slurp(spec.out_dir / "summary.csv");
  CHECK(summary.find("median") != std::string::npos);
}

TEST_CASE("compare needs three seeds") {
  auto spec = tiny_spec("compare");
  spec.seeds = {1, 2};
  std::ostringstream log;
  CHECK(cmd_compare(spec, log) != 0);
  CHECK(log.str().find("3 seeds") != std::string::npos);
  spec.seeds = {1, 2, 3};
  CHECK(cmd_compare(spec, log) == 0);
  CHECK(fs::exists(spec.out_dir / "compare.csv"));
  CHECK(fs::exists(spec.out_dir / "hv_curves.csv"));
}

TEST_CASE("eavesdropper modes on a frozen solution") {
  Scenario base = generate_scenario(5, 4, 3, 60);
  base.paa.rows = base.paa.cols = 2;
  base = finalize(base);
  const auto quad = GainQuadrature::with_resolution_deg(15);
  double prev_ctsd = 0.0;
  for (int count = 1; count <= 4; ++count) {
    Scenario s = with_eavesdroppers(base, count, 1);
    s.eaves_mode = EavesMode::Octd;
    const Problem po(s, quad);
    s.eaves_mode = EavesMode::Ctsd;
    const Problem pc(s, quad);
    const auto sol = po.hover_solution();
    const double f2o = po.evaluate(sol).f2();
    const double f2c = pc.evaluate(sol).f2();
    if (count == 1) CHECK(f2o == doctest::Approx(f2c).epsilon(1e-12));
    CHECK(f2c >= f2o * (1 - 1e-12));
    CHECK(f2c >= prev_ctsd * (1 - 1e-12));
    prev_ctsd = f2c;
  }
}

TEST_CASE("small commands and spec checks") {
  auto spec = tiny_spec("misc");
  std::ostringstream log;
  CHECK(cmd_overhead(spec, log) == 0);
  CHECK(fs::exists(spec.out_dir / "overhead.csv"));
  CHECK(cmd_beampattern(spec, log) == 0);
  CHECK(fs::exists(spec.out_dir / "beampattern_uvaa_hover.csv"));
  CHECK(fs::exists(spec.out_dir / "beampattern_paa_hover.csv"));

  spec.algo = "nsga";
  CHECK(cmd_run(spec, log) != 0);
  spec.algo = "imogoa";
  spec.mode = "both";
  spec.eaves_counts = {0};
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.eaves_counts = {1};
  spec.scenario_path = spec.out_dir / "missing.json";
  CHECK(cmd_run(spec, log) != 0);
}
