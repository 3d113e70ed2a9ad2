#pragma once

#include <cstdint>
#include <vector>

#include "uavrelay/problem.hpp"

namespace uavrelay {

// Multi-hop relay: n single-antenna UAVs equally spaced on the horizontal segment from
// the base-station panel to each device, at `altitude`. Devices are served in id order
// and the chain is rebuilt for each one.
struct MrsConfig {
  int n_hops = 2;                 // UAVs in the chain
  double altitude = 0.0;          // 0: middle of the scenario's z bounds
  std::vector<double> hop_power;  // transmit power of each UAV; empty: p_k for all

  void validate() const;
};

struct MrsResult {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  std::vector<double> bottleneck_snr;  // per device
};

// UAV positions of the chain toward `device`, nearest to the panel first.
std::vector<Position3D> mrs_chain(const Scenario& s, const Position3D& device, const MrsConfig& cfg);

MrsResult evaluate_mrs(const MrsConfig& cfg, const Scenario& s, const SpeedPolicy& policy);
MrsResult evaluate_mrs(const MrsConfig& cfg, const Scenario& s);

// Static linear array: K UAVs on a line through the swarm-box centre along `axis`,
// random excitation weights and receiver per draw.
struct LrsConfig {
  double element_spacing = 1.0;  // m
  Vec3 axis{1.0, 0.0, 0.0};
  int draws = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

struct LrsResult {
  double f1 = 0.0;  // mean over draws
  double f2 = 0.0;
  double f3 = 0.0;  // static array: always 0
  int draws = 0;
};

std::vector<Position3D> lrs_positions(const Scenario& s, const LrsConfig& cfg);

LrsResult evaluate_lrs(const LrsConfig& cfg, const Problem& problem, int threads = 1);

}  // namespace uavrelay
