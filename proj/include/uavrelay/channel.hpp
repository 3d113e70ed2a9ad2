#pragma once

#include "uavrelay/geometry.hpp"
#include "uavrelay/scenario.hpp"

namespace uavrelay {

enum class LinkKind { G2A, A2G, G2G };

struct LinkGeometry {
  double dv = 0.0;    // vertical distance, m
  double dh = 0.0;    // horizontal distance, m
  double d = 0.0;     // 3D distance, m
  double zeta = 0.0;  // elevation angle, degrees in [0, 90]

  static LinkGeometry between(const Position3D& a, const Position3D& b);
};

// Linear-scale channel constants, converted once from ChannelParams.
struct ChannelModel {
  double a = 0.0;
  double b = 0.0;
  double beta0 = 0.0;  // linear gain at d0 = 1 m
  double mu = 0.0;     // linear NLoS attenuation
  double alpha_los = 0.0;
  double alpha_nlos = 0.0;
  double alpha_g = 0.0;
  double noise_power = 0.0;  // sigma^2 in W over the full bandwidth
  double bandwidth = 0.0;

  static ChannelModel from(const ChannelParams& p);
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Logistic S-curve in the elevation angle (degrees).
double los_probability(const LinkGeometry& geom, const ChannelModel& ch);

// Expected channel power gain. G2A/A2G blend the LoS and NLoS path-loss laws by the
// LoS probability; G2G is a single power law. Throws DomainError for d < 1 m.
double channel_gain(LinkKind kind, const LinkGeometry& geom, const ChannelModel& ch);

inline double channel_gain(LinkKind kind, const Position3D& from, const Position3D& to, const ChannelModel& ch) {
  return channel_gain(kind, LinkGeometry::between(from, to), ch);
}

// LoS-only power law for UAV-to-UAV hops (air-to-air has no blocking).
double air_to_air_gain(double d, const ChannelModel& ch);

}  // namespace uavrelay
