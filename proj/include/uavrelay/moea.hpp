#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "uavrelay/problem.hpp"

namespace uavrelay {

using Rng = std::mt19937_64;

// Sorted-neighbour gap sum per objective, each objective scaled by its range over the
// set. Per-objective extremes get +inf; sets of two or fewer are all +inf.
std::vector<double> crowding_distances(std::span<const ObjectiveVector> objs);

enum class PruneMode {
  Dynamic,  // recompute the distances after every single removal
  Static    // compute once, drop the smallest in one pass
};

// Indices of the members kept when shrinking `objs` to `cap`, in ascending order.
// Ties on the minimal distance are broken uniformly at random.
std::vector<std::size_t> crowding_prune(std::span<const ObjectiveVector> objs, std::size_t cap, PruneMode mode,
                                        Rng& rng);

std::vector<EvaluatedSolution> dcde_prune(std::vector<EvaluatedSolution> members, std::size_t cap, Rng& rng,
                                          PruneMode mode = PruneMode::Dynamic);

// Non-dominated members of the union of `archive` and `candidates` (constrained
// dominance), one copy per distinct objective vector, pruned to `cap`.
std::vector<EvaluatedSolution> update_archive(std::vector<EvaluatedSolution> archive,
                                              std::span<const EvaluatedSolution> candidates, std::size_t cap,
                                              Rng& rng, PruneMode mode = PruneMode::Dynamic);

// Per-objective min/max used to map objective vectors into [0, 1]^3.
struct Normalization {
  ObjectiveVector lo{};
  ObjectiveVector hi{};

  static Normalization of(std::span<const ObjectiveVector> objs);
  static Normalization of_fronts(std::span<const std::vector<ObjectiveVector>> fronts);

  // Constant objectives map to 0.
  ObjectiveVector apply(const ObjectiveVector& v) const;
  std::vector<ObjectiveVector> apply(std::span<const ObjectiveVector> vs) const;
};

// Number of other members within `radius` (Euclidean, normalized space).
std::vector<int> neighbor_counts(std::span<const ObjectiveVector> normalized, double radius);

// Selection weights proportional to 1 / (1 + n_i), summing to 1.
std::vector<double> roulette_probabilities(std::span<const int> counts);

std::size_t roulette_select(std::span<const double> probabilities, Rng& rng);

// Crowding-aware choice of the target among archive members. Throws ValidationError on
// an empty archive.
std::size_t roulette_select_target(std::span<const EvaluatedSolution> archive, double radius, Rng& rng);

// Fraction of [0, 1]^n dominated by a normalized front, reference point (1, ..., 1),
// by uniform sampling. Works for any objective count.
double hypervolume_mc(std::span<const std::vector<double>> front, std::size_t n_samples, Rng& rng);
double hypervolume_mc(std::span<const ObjectiveVector> normalized_front, std::size_t n_samples, Rng& rng);

std::vector<ObjectiveVector> objectives_of(std::span<const EvaluatedSolution> members);

}  // namespace uavrelay
