#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "uavrelay/beamforming.hpp"
#include "uavrelay/link_budget.hpp"
#include "uavrelay/scenario.hpp"
#include "uavrelay/uav_energy.hpp"

namespace uavrelay {

// One decision vector. Every per-service block is indexed by device: column d holds the
// weights, receiver and swarm layout used while device d is being served, so reordering
// the service sequence moves the swarm along a different path but never changes which
// configuration serves which device.
struct Solution {
  std::vector<double> i_paa;       // [d * MN + m], in [0, 1]
  std::vector<int> s_recv;         // [d], 1-based UAV index in [1, K]
  std::vector<double> i_uvaa;      // [d * K + k], in [0, 1]
  std::vector<Position3D> p_uav;   // [d * K + k]
  std::vector<int> order;          // service sequence, a permutation of device ids 1..T

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Minimization orientation: (-f1, f2, f3).
using ObjectiveVector = std::array<double, 3>;

struct EvaluatedSolution {
  Solution solution;
  ObjectiveVector objectives{};
  bool feasible = true;
  double violation = 0.0;  // sum over services and UAV pairs of max(0, d_min - distance)
  bool degenerate = false;

  double f1() const { return -objectives[0]; }
  double f2() const { return objectives[1]; }
  double f3() const { return objectives[2]; }
};

// Sizes of the blocks, and the flat continuous view (i_paa, i_uvaa, p_uav as x,y,z) the
// optimizers move around in.
struct SolutionLayout {
  int mn = 0;
  int k = 0;
  int t = 0;

  static SolutionLayout of(const Scenario& s) { return {s.paa.element_count(), s.uav_count(), s.device_count()}; }

  std::size_t continuous_size() const { return static_cast<std::size_t>(t) * (mn + 4 * k); }
  std::vector<double> lower(const Bounds& b) const;
  std::vector<double> upper(const Bounds& b) const;

  std::vector<double> continuous(const Solution& s) const;
  void set_continuous(Solution& s, std::span<const double> x) const;

  // Flat record: continuous block, then s_recv, then order.
  std::vector<std::string> record_header() const;
  std::vector<double> to_record(const Solution& s) const;
  Solution from_record(std::span<const double> rec) const;

  // Throws ValidationError if any block has the wrong size or order is not a permutation.
  void check(const Solution& s) const;
};

bool is_permutation_of_1_to_n(std::span<const int> v);

// Round then clip to [1, k].
int repair_receiver(double raw, int k);

// Constrained dominance: feasible beats infeasible, infeasible pairs compare violation,
// feasible pairs compare objectives.
bool dominates(const EvaluatedSolution& a, const EvaluatedSolution& b);
bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

class Problem {
 public:
  Problem(Scenario scenario, GainQuadrature quad);
  Problem(Scenario scenario, GainQuadrature quad, SpeedPolicy policy);

  const Scenario& scenario() const { return budget_.scenario(); }
  const LinkBudget& link_budget() const { return budget_; }
  const SolutionLayout& layout() const { return layout_; }
  const SpeedPolicy& speed_policy() const { return policy_; }

  EvaluatedSolution evaluate(const Solution& sol) const;

  // Per-device rate breakdown, index d.
  std::vector<RatePair> service_rates(const Solution& sol) const;

  double violation(const Solution& sol) const;

  Solution clamp_repair(Solution sol) const;

  // Every UAV keeps its initial position for all services, uniform weights, UAV 1
  // receives, devices served in id order.
  Solution hover_solution() const;

 private:
  LinkBudget budget_;
  SolutionLayout layout_;
  SpeedPolicy policy_;
};

}  // namespace uavrelay
