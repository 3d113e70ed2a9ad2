#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "uavrelay/moea.hpp"
#include "uavrelay/problem.hpp"

namespace uavrelay {

// What one unit of alpha1 / alpha2 means along a continuous dimension.
//   Native:     one unit of the variable itself (a weight, a metre).
//   Range:      the full box width of that dimension.
//   Difference: the member's offset from its guide (the target for the Levy flight, the
//               random archive partner for the Cauchy mutation), so steps shrink as the
//               population converges.
enum class StepReference { Native, Range, Difference };

struct OptimizerConfig {
  int pop_size = 20;
  int iter_max = 100;
  double c_max = 1.0;
  double c_min = 0.0004;
  double levy_beta = 1.5;
  double alpha1 = 0.2;  // Levy step scale
  double alpha2 = 0.2;  // Cauchy step scale
  StepReference step_reference = StepReference::Difference;
  double goa_f = 0.5;
  double goa_l = 1.5;
  double chaos_a = 0.5;
  double chaos_b = 0.2;
  double r_nbh = 0.1;
  int archive_cap = 0;  // 0: equal to pop_size
  std::size_t hv_samples = 10000;
  int threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;

  struct Toggles {
    bool h3c_init = true;
    bool nonlinear_c = true;
    bool levy = true;
    bool archive_mutation = true;
    bool dcde = true;
  } toggles;

  std::size_t cap() const { return static_cast<std::size_t>(archive_cap > 0 ? archive_cap : pop_size); }

  // Same parameters with every improvement switched off.
  OptimizerConfig vanilla() const;

  void validate() const;
};

OptimizerConfig optimizer_config_from_json(const nlohmann::json& j);
nlohmann::json optimizer_config_to_json(const OptimizerConfig& c);

// ---- initialization ------------------------------------------------------------------

// Radical inverse of `index` in `base` (index >= 1).
double halton(std::uint64_t index, int base);

// One step of the circle map c -> mod(c + b - (a / 2 pi) sin(2 pi c), 1).
double circle_map(double c, double a, double b);

// Points in [0, 1]^dims. The first ceil(n / 2) come from Halton sequences, one per
// dimension with a random prime base from {2, 3, 5, 7} and a random start index; the
// rest follow one circle-map orbit per dimension from a random seed value.
std::vector<std::vector<double>> h3c_unit_points(int n, std::size_t dims, const OptimizerConfig& cfg, Rng& rng);
std::vector<std::vector<double>> random_unit_points(int n, std::size_t dims, Rng& rng);

// Maps between solutions and the unit hypercube the optimizer searches. The genome is
// the continuous block (scaled to [0, 1]) followed by T receiver keys and T order keys;
// receivers decode by rounding into [1, K], order by argsort of its keys.
class Encoding {
 public:
  explicit Encoding(const Problem& problem);

  std::size_t continuous_size() const { return lo_.size(); }
  std::size_t genome_size() const { return lo_.size() + 2 * static_cast<std::size_t>(layout_.t); }

  std::vector<double> to_unit(const Solution& s) const;
  // Continuous values outside [0, 1] are clipped.
  Solution from_unit(std::span<const double> unit_cont, std::vector<int> s_recv, std::vector<int> order) const;
  Solution decode_genome(std::span<const double> genome) const;

  // Per-dimension unit-space step for scale factor `alpha` (Native and Range only).
  std::vector<double> step_alpha(double alpha, StepReference ref) const;

 private:
  SolutionLayout layout_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

std::vector<int> argsort_permutation(std::span<const double> keys);

std::vector<Solution> h3c_initialize(const OptimizerConfig& cfg, const Problem& problem, Rng& rng);
std::vector<Solution> random_initialize(const OptimizerConfig& cfg, const Problem& problem, Rng& rng);

// ---- continuous update ---------------------------------------------------------------

double decreasing_coefficient(int iter, const OptimizerConfig& cfg);
double decreasing_coefficient(int iter, const OptimizerConfig& cfg, bool nonlinear);

// Attraction/repulsion s(r) = f exp(-r / l) - exp(-r).
double goa_s(double r, double f, double l);

// Social-interaction move of member i toward `target`, in unit coordinates (every
// dimension spans [0, 1]). Per-dimension gaps are rescaled into [1, 4] before s().
std::vector<double> goa_step(std::span<const std::vector<double>> pop, std::size_t i, std::span<const double> target,
                             double c, const OptimizerConfig& cfg);

double levy_sigma(double beta);
double levy_draw(double beta, double sigma, Rng& rng);
void levy_perturb(std::span<double> x, double alpha, double beta, Rng& rng);
void cauchy_mutate(std::span<double> x, double alpha, Rng& rng);
void levy_perturb(std::span<double> x, std::span<const double> alpha, double beta, Rng& rng);
void cauchy_mutate(std::span<double> x, std::span<const double> alpha, Rng& rng);

// ---- discrete update -----------------------------------------------------------------

struct IntPair {
  std::vector<int> first;
  std::vector<int> second;
};

// Swap positions [lo, hi] (0-based, inclusive).
IntPair tpc(std::span<const int> a, std::span<const int> b, std::size_t lo, std::size_t hi);
IntPair tpc(std::span<const int> a, std::span<const int> b, Rng& rng);

// Partially matched crossover on permutations: children take the other parent's
// segment [lo, hi] and resolve conflicts outside it through the segment mapping.
IntPair pmx(std::span<const int> a, std::span<const int> b, std::size_t lo, std::size_t hi);
IntPair pmx(std::span<const int> a, std::span<const int> b, Rng& rng);

// Random segment bounds lo <= hi in [0, n).
std::pair<std::size_t, std::size_t> crossover_points(std::size_t n, Rng& rng);

// O1 if it dominates O2, O2 if it dominates O1, otherwise a fair coin. Returns 0 or 1.
int select_offspring(const EvaluatedSolution& o1, const EvaluatedSolution& o2, Rng& rng);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each fn(i) must write only
// its own slot.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// ---- update operators ----------------------------------------------------------------

// Two children sharing one continuous part and differing in the discrete crossover.
struct OffspringPair {
  Solution o1;
  Solution o2;
};

// Member i moves by the social interaction (plus a Levy flight when enabled); its
// receivers and order cross with the target's.
OffspringPair propose_update(const Encoding& enc, std::span<const std::vector<double>> units, std::size_t i,
                             const Solution& target, std::span<const double> target_unit, const Solution& current,
                             double c, const OptimizerConfig& cfg, Rng& rng);

// Cauchy mutation of an archive member, discrete crossover with `partner`.
OffspringPair propose_mutation(const Encoding& enc, const Solution& member, const Solution& partner,
                               const OptimizerConfig& cfg, Rng& rng);

std::vector<EvaluatedSolution> evaluate_all(const Problem& problem, std::span<const Solution> sols, int threads);

// Evaluates both children of every pair and keeps one by select_offspring.
std::vector<EvaluatedSolution> select_pairs(const Problem& problem, std::span<const OffspringPair> pairs, int threads,
                                            Rng& rng);

// One member's full update toward `target`, evaluated and selected.
EvaluatedSolution solution_update(const Problem& problem, std::span<const EvaluatedSolution> pop, std::size_t i,
                                  const Solution& target, double c, const OptimizerConfig& cfg, Rng& rng);

// One mutant per archive member, each crossed with a uniformly drawn archive partner.
std::vector<EvaluatedSolution> archive_mutation(const Problem& problem, std::span<const EvaluatedSolution> archive,
                                                const OptimizerConfig& cfg, Rng& rng);

// ---- driver --------------------------------------------------------------------------

struct IterationRecord {
  int iteration = 0;
  std::size_t archive_size = 0;
  double hv = 0.0;
  ObjectiveVector best{};  // per-objective minimum over the archive
  std::vector<ObjectiveVector> archive;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;  // index 0: after initialization
  std::size_t evaluations = 0;
  Normalization normalization;  // over every archive snapshot, used for the hv column
};

struct RunResult {
  std::vector<EvaluatedSolution> archive;
  RunTrace trace;
};

struct RunHooks {
  // Called with the population after every solution update.
  std::function<void(int iteration, const std::vector<EvaluatedSolution>& population)> on_population;
  // Called with the archive after every archive update.
  std::function<void(int iteration, const std::vector<EvaluatedSolution>& archive)> on_archive;
};

RunResult run(const OptimizerConfig& cfg, const Problem& problem, const RunHooks& hooks = {});

// Plain MOGOA with the same settings: run(cfg.vanilla(), problem).
RunResult run_vanilla(const OptimizerConfig& cfg, const Problem& problem, const RunHooks& hooks = {});

}  // namespace uavrelay
