#include "uavrelay/channel.hpp"

#include <cmath>
#include <string>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {
constexpr double kReferenceDistance = 1.0;

void check_distance(double d) {
  if (!(d >= kReferenceDistance))
    throw DomainError("link distance " + std::to_string(d) + " m is below the 1 m reference distance");
}
}  // namespace

LinkGeometry LinkGeometry::between(const Position3D& a, const Position3D& b) {
  LinkGeometry g;
  g.dv = std::abs(b.z - a.z);
  g.dh = horizontal_distance(a, b);
  g.d = std::hypot(g.dh, g.dv);
  g.zeta = g.dh > 0.0 ? std::atan(g.dv / g.dh) * 180.0 / kPi : 90.0;
  return g;
}

ChannelModel ChannelModel::from(const ChannelParams& p) {
  ChannelModel m;
  m.a = p.a;
  m.b = p.b;
  m.beta0 = db_to_linear(p.beta0_db);
  m.mu = db_to_linear(p.mu_db);
  m.alpha_los = p.alpha_los;
  m.alpha_nlos = p.alpha_nlos;
  m.alpha_g = p.alpha_g;
  m.bandwidth = p.bandwidth_hz;
  // dBm/Hz -> W/Hz, times bandwidth.
  m.noise_power = db_to_linear(p.noise_psd_dbm_hz - 30.0) * p.bandwidth_hz;
  return m;
}

double los_probability(const LinkGeometry& geom, const ChannelModel& ch) {
  return 1.0 / (1.0 + ch.a * std::exp(-ch.b * (geom.zeta - ch.a)));
}

double channel_gain(LinkKind kind, const LinkGeometry& geom, const ChannelModel& ch) {
  check_distance(geom.d);
  if (kind == LinkKind::G2G) return ch.beta0 * std::pow(geom.d, -ch.alpha_g);

  const double p_los = los_probability(geom, ch);
  const double h_los = ch.beta0 * std::pow(geom.d, -ch.alpha_los);
  const double h_nlos = ch.mu * ch.beta0 * std::pow(geom.d, -ch.alpha_nlos);
  return p_los * h_los + (1.0 - p_los) * h_nlos;
}

double air_to_air_gain(double d, const ChannelModel& ch) {
  check_distance(d);
  return ch.beta0 * std::pow(d, -ch.alpha_los);
}

}  // namespace uavrelay
