#pragma once

#include <span>
#include <vector>

#include "uavrelay/geometry.hpp"
#include "uavrelay/scenario.hpp"

namespace uavrelay {

struct FlightLeg {
  Position3D start;
  Position3D end;
  double speed = 0.0;  // m/s
};

// Rotary-wing propulsion power (W) in straight level flight at speed v.
double propulsion_power(double v, const AeroParams& aero);

// Hover-to-hover leg at constant speed: P(v) * |end - start| / v + m g dz.
// Throws DomainError when the leg has nonzero length and zero speed.
double leg_energy(const FlightLeg& leg, const AeroParams& aero, bool nonnegative_floor = false);

// argmin_v P(v)/v on [lo, hi] by golden-section search.
double max_range_speed(const AeroParams& aero, double lo = 1.0, double hi = 40.0, double tol = 0.01);

struct SpeedPolicy {
  double speed = 0.0;
  bool nonnegative_floor = false;

  static SpeedPolicy max_range(const AeroParams& aero) { return {max_range_speed(aero), false}; }
};

// K x T positions, stored column-major by service: positions[service * K + uav].
// Column `d` is the configuration used while serving device `d`; `order` lists the
// devices in service sequence. Each UAV flies straight from its initial position to
// its column for order[0], then to order[1], and so on.
double swarm_energy(std::span<const Position3D> positions, std::span<const Position3D> initial,
                    std::span<const int> order, const AeroParams& aero, const SpeedPolicy& policy);

struct OverheadParams {
  int n_re = 3;         // retransmission cap
  double f = 0.05;      // packet-loss probability
  double b_s = 28 * 8;  // bits
  double b_f = 208 * 8;
  double b_o = 3272 * 8;
  double b_a1 = 28 * 8;
  double b_a3 = 9 * 8;
  double r = 1e6;    // bps
  double p_t = 0.1;  // W
  int k = 16;
};

// Expected transmissions per message with at most n_re attempts.
double mean_transmissions(double f, int n_re);

// Energy the swarm spends exchanging the scheduling messages (J).
double scheduling_overhead(const OverheadParams& p);

}  // namespace uavrelay
