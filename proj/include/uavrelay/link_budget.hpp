#pragma once

#include <span>
#include <vector>

#include "uavrelay/beamforming.hpp"
#include "uavrelay/channel.hpp"
#include "uavrelay/scenario.hpp"

namespace uavrelay {

// Wiretap SNRs of one eavesdropper over the three relay phases (linear).
struct EavesdropperSnr {
  double s2e = 0.0;  // phase I: MBS panel -> eavesdropper (G2G)
  double u2e = 0.0;  // phase II: receiver UAV broadcast -> eavesdropper
  double c2e = 0.0;  // phase III: swarm array -> eavesdropper

  // Maximal-ratio combining across the phases.
  double combined() const { return s2e + u2e + c2e; }
};

struct RatePair {
  double r_legit = 0.0;  // bps
  double r_eaves = 0.0;  // bps
  double snr_s2u = 0.0;
  double snr_c2d = 0.0;
  std::vector<EavesdropperSnr> eaves;
  bool degenerate = false;  // a relay array had all-zero weights
};

double shannon_rate(double bandwidth, double snr);

// The relay is decode-and-forward through the weaker of the two legs.
double legit_rate(double bandwidth, double snr_s2u, double snr_c2d);

// OCTD: each eavesdropper decodes alone (max or sum of per-eavesdropper rates per
// `aggregate`); CTSD: SNRs pooled across eavesdroppers, one rate.
double eaves_rate(double bandwidth, std::span<const EavesdropperSnr> eaves, EavesMode mode,
                  OctdAggregate aggregate = OctdAggregate::Max);

// One relay service: which UAV receives from the panel, where the UAVs are, and the
// two excitation columns.
struct ServiceContext {
  int receiver = 0;  // 0-based UAV index
  std::span<const Position3D> uav_positions;
  std::span<const double> paa_weights;
  std::span<const double> uvaa_weights;
  Position3D device;
};

// Scenario-bound rate calculator. Immutable after construction and safe to share
// across threads.
class LinkBudget {
 public:
  LinkBudget(Scenario scenario, GainQuadrature quad);

  RatePair service(const ServiceContext& ctx) const;
  RatePair service(const ServiceContext& ctx, EavesMode mode) const;

  const Scenario& scenario() const { return scenario_; }
  const ChannelModel& channel() const { return channel_; }
  const GainQuadrature& quadrature() const { return quad_; }
  std::span<const Vec3> paa_offsets() const { return paa_offsets_; }

 private:
  Scenario scenario_;
  GainQuadrature quad_;
  ChannelModel channel_;
  std::vector<Vec3> paa_offsets_;
  CouplingMatrix paa_coupling_;
};

}  // namespace uavrelay
