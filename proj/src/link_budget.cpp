#include "uavrelay/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uavrelay/errors.hpp"

namespace uavrelay {

double shannon_rate(double bandwidth, double snr) { return bandwidth * std::log2(1.0 + snr); }

double legit_rate(double bandwidth, double snr_s2u, double snr_c2d) {
  return shannon_rate(bandwidth, std::min(snr_s2u, snr_c2d));
}

double eaves_rate(double bandwidth, std::span<const EavesdropperSnr> eaves, EavesMode mode,
                  OctdAggregate aggregate) {
  if (eaves.empty()) return 0.0;
  if (mode == EavesMode::Ctsd) {
    double pooled = 0.0;
    for (const auto& e : eaves) pooled += e.combined();
    return shannon_rate(bandwidth, pooled);
  }
  double out = 0.0;
  for (const auto& e : eaves) {
    const double r = shannon_rate(bandwidth, e.combined());
    out = aggregate == OctdAggregate::Max ? std::max(out, r) : out + r;
  }
  return out;
}

LinkBudget::LinkBudget(Scenario scenario, GainQuadrature quad)
    : scenario_(std::move(scenario)),
      quad_(std::move(quad)),
      channel_(ChannelModel::from(scenario_.channel)),
      paa_offsets_(scenario_.paa.element_offsets()),
      paa_coupling_(paa_offsets_, scenario_.channel.wavelength(), quad_) {}

RatePair LinkBudget::service(const ServiceContext& ctx) const { return service(ctx, scenario_.eaves_mode); }

RatePair LinkBudget::service(const ServiceContext& ctx, EavesMode mode) const {
  const auto& sc = scenario_;
  const std::size_t k_count = ctx.uav_positions.size();
  if (ctx.receiver < 0 || static_cast<std::size_t>(ctx.receiver) >= k_count)
    throw ValidationError("receiver UAV index out of range (C2)");
  if (ctx.uvaa_weights.size() != k_count || ctx.paa_weights.size() != paa_offsets_.size())
    throw ValidationError("weight column size does not match the array");

  const double lambda = sc.channel.wavelength();
  const double sigma2 = channel_.noise_power;
  const Position3D& paa_center = sc.paa.center;
  const Position3D& rx = ctx.uav_positions[static_cast<std::size_t>(ctx.receiver)];

  RatePair out;
  out.eaves.resize(sc.eavesdroppers.size());

  // Phase I: the panel steers at the receiver UAV.
  ArraySpec paa{paa_offsets_, {ctx.paa_weights.begin(), ctx.paa_weights.end()}, lambda};
  const double paa_sum = std::accumulate(paa.weights.begin(), paa.weights.end(), 0.0);
  if (paa_sum > 0.0) {
    const Direction target = direction_between(paa_center, rx);
    const double denom = paa_coupling_.pattern_integral(steered_excitation(paa, target));
    const auto gain_toward = [&](Direction d) {
      return 4.0 * kPi * std::norm(array_factor(paa, target, d)) * sc.eta_paa / denom;
    };
    out.snr_s2u = sc.p_s * gain_toward(target) * channel_gain(LinkKind::G2A, paa_center, rx, channel_) / sigma2;
    for (std::size_t e = 0; e < sc.eavesdroppers.size(); ++e) {
      const auto& eav = sc.eavesdroppers[e];
      out.eaves[e].s2e = sc.p_s * gain_toward(direction_between(paa_center, eav)) *
                         channel_gain(LinkKind::G2G, paa_center, eav, channel_) / sigma2;
    }
  } else {
    out.degenerate = true;
  }

  // Phase II: omni broadcast from the receiver UAV.
  for (std::size_t e = 0; e < sc.eavesdroppers.size(); ++e)
    out.eaves[e].u2e = sc.p_k * channel_gain(LinkKind::A2G, rx, sc.eavesdroppers[e], channel_) / sigma2;

  // Phase III: the swarm steers from its centroid at the device.
  Position3D center{};
  for (const auto& p : ctx.uav_positions) center += p;
  center *= 1.0 / static_cast<double>(k_count);
  ArraySpec uvaa{{}, {ctx.uvaa_weights.begin(), ctx.uvaa_weights.end()}, lambda};
  uvaa.offsets.reserve(k_count);
  for (const auto& p : ctx.uav_positions) uvaa.offsets.push_back(p - center);
  const double uvaa_sum = std::accumulate(uvaa.weights.begin(), uvaa.weights.end(), 0.0);
  if (uvaa_sum > 0.0) {
    const Direction target = direction_between(center, ctx.device);
    const double denom = pattern_integral(uvaa, target, quad_);
    const auto gain_toward = [&](Direction d) {
      return 4.0 * kPi * std::norm(array_factor(uvaa, target, d)) * sc.eta_uvaa / denom;
    };
    out.snr_c2d = sc.p_u * gain_toward(target) * channel_gain(LinkKind::A2G, center, ctx.device, channel_) / sigma2;
    for (std::size_t e = 0; e < sc.eavesdroppers.size(); ++e) {
      const auto& eav = sc.eavesdroppers[e];
      out.eaves[e].c2e = sc.p_u * gain_toward(direction_between(center, eav)) *
                         channel_gain(LinkKind::A2G, center, eav, channel_) / sigma2;
    }
  } else {
    out.degenerate = true;
  }

  const double bw = channel_.bandwidth;
  out.r_legit = legit_rate(bw, out.snr_s2u, out.snr_c2d);
  out.r_eaves = eaves_rate(bw, out.eaves, mode, sc.octd_aggregate);
  return out;
}

}  // namespace uavrelay
