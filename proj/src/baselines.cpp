#include "uavrelay/baselines.hpp"

#include <cmath>
#include <random>

#include "uavrelay/channel.hpp"
#include "uavrelay/errors.hpp"
#include "uavrelay/imogoa.hpp"

namespace uavrelay {

void MrsConfig::validate() const {
  if (n_hops < 2) throw ValidationError("MRS needs at least 2 hops");
  if (!hop_power.empty() && hop_power.size() != static_cast<std::size_t>(n_hops))
    throw ValidationError("MRS hop_power must list one power per UAV");
  for (double p : hop_power)
    if (!(p >= 0.0)) throw ValidationError("MRS hop power must be nonnegative");
}

std::vector<Position3D> mrs_chain(const Scenario& s, const Position3D& device, const MrsConfig& cfg) {
  const double z = cfg.altitude > 0.0 ? cfg.altitude : 0.5 * (s.bounds.lo.z + s.bounds.hi.z);
  const Position3D& from = s.paa.center;
  std::vector<Position3D> chain;
  for (int j = 1; j <= cfg.n_hops; ++j) {
    const double t = static_cast<double>(j) / (cfg.n_hops + 1);
    chain.push_back({from.x + t * (device.x - from.x), from.y + t * (device.y - from.y), z});
  }
  return chain;
}

MrsResult evaluate_mrs(const MrsConfig& cfg, const Scenario& s) {
  return evaluate_mrs(cfg, s, SpeedPolicy::max_range(s.aero));
}

MrsResult evaluate_mrs(const MrsConfig& cfg, const Scenario& s, const SpeedPolicy& policy) {
  cfg.validate();
  if (cfg.n_hops > s.uav_count()) throw ValidationError("MRS uses more UAVs than the scenario has");
  const ChannelModel ch = ChannelModel::from(s.channel);
  const double sigma2 = ch.noise_power;
  const auto power = [&](int j) { return cfg.hop_power.empty() ? s.p_k : cfg.hop_power[static_cast<std::size_t>(j)]; };

  MrsResult out;
  std::vector<Position3D> at(s.uav_init.begin(), s.uav_init.begin() + cfg.n_hops);
  for (const auto& device : s.devices) {
    const auto chain = mrs_chain(s, device, cfg);

    double bottleneck = s.p_s * channel_gain(LinkKind::G2A, s.paa.center, chain.front(), ch) / sigma2;
    for (int j = 0; j + 1 < cfg.n_hops; ++j) {
      const double gain = air_to_air_gain(distance(chain[j], chain[j + 1]), ch);
      bottleneck = std::min(bottleneck, power(j) * gain / sigma2);
    }
    bottleneck = std::min(bottleneck, power(cfg.n_hops - 1) * channel_gain(LinkKind::A2G, chain.back(), device, ch) / sigma2);
    out.bottleneck_snr.push_back(bottleneck);
    out.f1 += shannon_rate(ch.bandwidth, bottleneck);

    // Every transmission in the chain is one more wiretap observation.
    std::vector<EavesdropperSnr> eaves;
    for (const auto& e : s.eavesdroppers) {
      EavesdropperSnr snr;
      snr.s2e = s.p_s * channel_gain(LinkKind::G2G, s.paa.center, e, ch) / sigma2;
      for (int j = 0; j < cfg.n_hops; ++j) snr.u2e += power(j) * channel_gain(LinkKind::A2G, chain[j], e, ch) / sigma2;
      eaves.push_back(snr);
    }
    out.f2 += eaves_rate(ch.bandwidth, eaves, s.eaves_mode, s.octd_aggregate);

    for (int j = 0; j < cfg.n_hops; ++j) {
      out.f3 += leg_energy({at[j], chain[j], policy.speed}, s.aero, policy.nonnegative_floor);
      at[j] = chain[j];
    }
  }
  return out;
}

void LrsConfig::validate() const {
  if (!(element_spacing > 0.0)) throw ValidationError("LRS element spacing must be positive");
  if (draws < 1) throw ValidationError("LRS needs at least one draw");
  if (norm(axis) == 0.0) throw ValidationError("LRS axis must be nonzero");
}

std::vector<Position3D> lrs_positions(const Scenario& s, const LrsConfig& cfg) {
  const Vec3 dir = cfg.axis * (1.0 / norm(cfg.axis));
  const Vec3 c = s.bounds.center();
  const int k = s.uav_count();
  std::vector<Position3D> out;
  for (int i = 0; i < k; ++i) out.push_back(c + dir * ((i - 0.5 * (k - 1)) * cfg.element_spacing));
  return out;
}

LrsResult evaluate_lrs(const LrsConfig& cfg, const Problem& problem, int threads) {
  cfg.validate();
  const auto& s = problem.scenario();
  const auto& layout = problem.layout();
  const auto line = lrs_positions(s, cfg);

  // Draw every random quantity up front so the result does not depend on `threads`.
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> recv(1, layout.k);
  std::vector<Solution> sols(static_cast<std::size_t>(cfg.draws));
  for (auto& sol : sols) {
    sol.i_paa.resize(static_cast<std::size_t>(layout.t) * layout.mn);
    for (auto& w : sol.i_paa) w = u(rng);
    sol.i_uvaa.resize(static_cast<std::size_t>(layout.t) * layout.k);
    for (auto& w : sol.i_uvaa) w = u(rng);
    sol.s_recv.resize(static_cast<std::size_t>(layout.t));
    for (auto& r : sol.s_recv) r = recv(rng);
    for (int d = 0; d < layout.t; ++d) sol.p_uav.insert(sol.p_uav.end(), line.begin(), line.end());
    for (int i = 0; i < layout.t; ++i) sol.order.push_back(i + 1);
  }

  std::vector<std::pair<double, double>> rates(sols.size());
  parallel_for(sols.size(), threads, [&](std::size_t i) {
    double f1 = 0.0;
    double f2 = 0.0;
    for (const auto& r : problem.service_rates(sols[i])) {
      f1 += r.r_legit;
      f2 += r.r_eaves;
    }
    rates[i] = {f1, f2};
  });

  LrsResult out;
  out.draws = cfg.draws;
  for (const auto& [f1, f2] : rates) {
    out.f1 += f1;
    out.f2 += f2;
  }
  out.f1 /= cfg.draws;
  out.f2 /= cfg.draws;
  return out;
}

}  // namespace uavrelay
