// Command-line front end: uavrelay <subcommand> [flags]
#include <iostream>

#include <CLI11.hpp>

#include "uavrelay/experiment.hpp"

int main(int argc, char** argv) {
  using namespace uavrelay;
  CLI::App app{"UAV swarm secure relay: simulation and multi-objective optimization"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string scenario;
  std::string config;
  std::string out = "out";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario, "scenario JSON (default: built-in default scenario)");
    sub->add_option("--config", config, "optimizer config JSON (default: built-in defaults)");
    sub->add_option("--seeds", spec.seeds, "one or more seeds")->expected(1, -1);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--algo", spec.algo, "imogoa | mogoa")->check(CLI::IsMember({"imogoa", "mogoa"}));
    sub->add_option("--quad-deg", spec.quad_deg, "gain quadrature resolution in degrees");
    sub->add_option("--threads", spec.threads, "evaluation workers (0: all cores)");
    sub->add_option("--hv-samples", spec.hv_samples, "Monte Carlo samples for final hypervolumes");
  };

  auto* run = app.add_subcommand("run", "optimize and export archives, traces, trajectories, beam patterns");
  common(run);
  auto* compare = app.add_subcommand("compare", "IMOGOA vs MOGOA hypervolume over seeds (shared normalization)");
  common(compare);
  auto* sweep = app.add_subcommand("eaves-sweep", "objectives vs eavesdropper count under OCTD/CTSD");
  common(sweep);
  sweep->add_option("--counts", spec.eaves_counts, "eavesdropper counts")->expected(1, -1);
  sweep->add_option("--mode", spec.mode, "octd | ctsd | both")->check(CLI::IsMember({"octd", "ctsd", "both"}));
  auto* baselines = app.add_subcommand("baselines", "MRS and LRS tables with the optimized URS row");
  common(baselines);
  auto* overhead = app.add_subcommand("overhead", "scheduling-overhead energy report");
  overhead->add_option("--out", out, "output directory");
  overhead->add_option("--n-re", spec.overhead.n_re, "retransmission cap");
  overhead->add_option("--loss", spec.overhead.f, "packet-loss probability");
  overhead->add_option("--uavs", spec.overhead.k, "swarm size");
  overhead->add_option("--rate", spec.overhead.r, "link rate, bps");
  overhead->add_option("--power", spec.overhead.p_t, "transmit power, W");
  auto* pattern = app.add_subcommand("beampattern", "PAA and UVAA beam patterns of the hover configuration");
  common(pattern);

  CLI11_PARSE(app, argc, argv);
  spec.scenario_path = scenario;
  spec.config_path = config;
  spec.out_dir = out;

  if (*run) return cmd_run(spec, std::cout);
  if (*compare) return cmd_compare(spec, std::cout);
  if (*sweep) return cmd_eaves_sweep(spec, std::cout);
  if (*baselines) return cmd_baselines(spec, std::cout);
  if (*overhead) return cmd_overhead(spec, std::cout);
  if (*pattern) return cmd_beampattern(spec, std::cout);
  return 2;
}
