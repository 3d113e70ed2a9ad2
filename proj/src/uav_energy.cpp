#include "uavrelay/uav_energy.hpp"

#include <cmath>
#include <string>

#include "uavrelay/errors.hpp"

namespace uavrelay {

double propulsion_power(double v, const AeroParams& a) {
  const double v2 = v * v;
  const double u0_2 = a.u_0 * a.u_0;
  const double blade = a.p_blade * (1.0 + 3.0 * v2 / (a.u_tip * a.u_tip));
  const double induced = a.p_induced * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * u0_2 * u0_2)) - v2 / (2.0 * u0_2));
  const double parasite = 0.5 * a.d_0 * a.rho * a.s * a.area * v2 * v;
  return blade + induced + parasite;
}

double leg_energy(const FlightLeg& leg, const AeroParams& aero, bool nonnegative_floor) {
  const double length = distance(leg.start, leg.end);
  if (length == 0.0) return 0.0;
  if (!(leg.speed > 0.0))
    throw DomainError("leg of " + std::to_string(length) + " m cannot be flown at speed " + std::to_string(leg.speed));
  const double e = propulsion_power(leg.speed, aero) * length / leg.speed + aero.mass * aero.g * (leg.end.z - leg.start.z);
  return nonnegative_floor ? std::max(e, 0.0) : e;
}

double max_range_speed(const AeroParams& aero, double lo, double hi, double tol) {
  const auto cost = [&](double v) { return propulsion_power(v, aero) / v; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = cost(d);
    }
  }
  return 0.5 * (a + b);
}

double swarm_energy(std::span<const Position3D> positions, std::span<const Position3D> initial,
                    std::span<const int> order, const AeroParams& aero, const SpeedPolicy& policy) {
  const std::size_t k = initial.size();
  const std::size_t t = order.size();
  if (positions.size() != k * t)
    throw ValidationError("swarm_energy: positions hold " + std::to_string(positions.size()) + " entries, expected K*T = " +
                          std::to_string(k * t));
  double total = 0.0;
  for (std::size_t u = 0; u < k; ++u) {
    Position3D at = initial[u];
    for (std::size_t step = 0; step < t; ++step) {
      const int col = order[step];
      if (col < 0 || static_cast<std::size_t>(col) >= t) throw ValidationError("swarm_energy: order entry out of range");
      const Position3D& next = positions[static_cast<std::size_t>(col) * k + u];
      total += leg_energy({at, next, policy.speed}, aero, policy.nonnegative_floor);
      at = next;
    }
  }
  return total;
}

double mean_transmissions(double f, int n_re) {
  if (f == 0.0) return 1.0;
  return (1.0 - std::pow(f, n_re)) / (1.0 - f);
}

double scheduling_overhead(const OverheadParams& p) {
  if (p.n_re < 1) throw ValidationError("overhead: N_re >= 1");
  if (!(p.r > 0.0)) throw ValidationError("overhead: rate r > 0");
  if (!(p.f >= 0.0 && p.f < 1.0)) throw ValidationError("overhead: packet-loss probability in [0, 1)");
  const double n_t = mean_transmissions(p.f, p.n_re);
  return p.p_t * ((p.b_s + p.b_f + p.b_o) * n_t + (p.k - 1) * (p.b_a1 + p.b_a3)) / p.r;
}

}  // namespace uavrelay
