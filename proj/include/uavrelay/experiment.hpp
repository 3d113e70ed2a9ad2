#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavrelay/imogoa.hpp"
#include "uavrelay/uav_energy.hpp"

namespace uavrelay {

struct ExperimentSpec {
  std::filesystem::path scenario_path;  // empty: built-in default scenario
  std::filesystem::path config_path;    // empty: built-in optimizer defaults
  std::string algo = "imogoa";          // imogoa | mogoa
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out_dir = "out";
  double quad_deg = 5.0;
  std::vector<int> eaves_counts{1, 2, 3, 4};
  std::string mode = "both";  // octd | ctsd | both (eavesdropper sweep)
  int threads = 0;
  std::size_t hv_samples = 100000;  // final-front hypervolumes
  OverheadParams overhead;

  void validate() const;
};

Scenario load_experiment_scenario(const ExperimentSpec& spec);

// Config file (or defaults) with the seed left at its default, threads from the spec,
// and every toggle off when algo is mogoa.
OptimizerConfig load_experiment_config(const ExperimentSpec& spec);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Index of a compromise member: among feasible members (all members if none), the one
// closest to the ideal point after normalizing over the set.
std::size_t representative_index(std::span<const EvaluatedSolution> archive);

// Hypervolume of each front under one normalization built from all of them. Every
// front is sampled with the same stream, so identical fronts score identically.
std::vector<double> shared_hypervolumes(std::span<const std::vector<ObjectiveVector>> fronts, std::size_t n_samples,
                                        std::uint64_t seed);

struct CompareReport {
  std::vector<std::uint64_t> seeds;
  std::vector<double> hv_imogoa;
  std::vector<double> hv_mogoa;
  double median_imogoa = 0.0;
  double median_mogoa = 0.0;
  std::vector<RunResult> imogoa_runs;
  std::vector<RunResult> mogoa_runs;
};

// Runs both algorithms for each seed (config seed replaced) and scores every final
// archive under the shared normalization.
CompareReport compare_algorithms(const Problem& problem, const OptimizerConfig& cfg,
                                 std::span<const std::uint64_t> seeds, std::size_t hv_samples);

double median(std::vector<double> v);

// Subcommands. Each writes CSVs (with a .json sidecar) into spec.out_dir, logs a short
// human summary to `log`, and returns a process exit code.
int cmd_run(const ExperimentSpec& spec, std::ostream& log);
int cmd_compare(const ExperimentSpec& spec, std::ostream& log);
int cmd_eaves_sweep(const ExperimentSpec& spec, std::ostream& log);
int cmd_baselines(const ExperimentSpec& spec, std::ostream& log);
int cmd_overhead(const ExperimentSpec& spec, std::ostream& log);
int cmd_beampattern(const ExperimentSpec& spec, std::ostream& log);

}  // namespace uavrelay
