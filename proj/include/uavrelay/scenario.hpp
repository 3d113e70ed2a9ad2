#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavrelay/geometry.hpp"

namespace uavrelay {

// Planar array at the macro base station. Elements sit on a rows x cols grid in the
// plane orthogonal to `normal`, centred on `center`.
struct PaaGeometry {
  int rows = 6;
  int cols = 6;
  double element_spacing = 0.0;  // meters; 0 selects half a wavelength at load time
  Position3D center{0.0, 0.0, 25.0};
  Vec3 normal{1.0, 0.0, 0.0};

  int element_count() const { return rows * cols; }

  // Per-element offsets from `center`, row-major. They sum to zero.
  std::vector<Vec3> element_offsets() const;
};

// Channel configuration in the units people quote (dB, dBm/Hz). The linear-scale
// view used at runtime is ChannelModel (channel.hpp).
struct ChannelParams {
  double a = 9.61;
  double b = 0.16;
  double beta0_db = -60.0;
  double mu_db = -20.0;
  double alpha_los = 2.5;
  double alpha_nlos = 3.5;
  double alpha_g = 3.5;
  double noise_psd_dbm_hz = -174.0;
  double bandwidth_hz = 20e6;
  double carrier_freq_hz = 2.4e9;

  double wavelength() const { return kSpeedOfLight / carrier_freq_hz; }
};

// Rotary-wing propulsion model constants.
struct AeroParams {
  double p_blade = 79.86;    // W
  double p_induced = 88.63;  // W
  double u_tip = 120.0;      // m/s
  double u_0 = 4.03;         // m/s
  double d_0 = 0.6;
  double rho = 1.225;  // kg/m^3
  double s = 0.05;
  double area = 0.053;  // m^2
  double mass = 2.0;    // kg
  double g = 9.81;      // m/s^2
};

struct Bounds {
  Vec3 lo{150.0, -50.0, 70.0};
  Vec3 hi{250.0, 50.0, 120.0};

  bool contains(const Vec3& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
  }
  Vec3 clamp(const Vec3& p) const;
  Vec3 center() const { return (lo + hi) * 0.5; }
};

// OCTD: eavesdroppers combine the three phases but not each other.
// CTSD: eavesdroppers also pool their SNR across space.
enum class EavesMode { Octd, Ctsd };

// How per-eavesdropper rates fold into one service rate under OCTD.
enum class OctdAggregate { Max, Sum };

struct Scenario {
  PaaGeometry paa;
  double p_s = 3.6;  // MBS transmit power, W
  std::vector<Position3D> devices;
  std::vector<Position3D> eavesdroppers;
  std::vector<Position3D> uav_init;  // size K
  double p_k = 0.1;                  // per-UAV transmit power, W
  double p_u = 0.0;                  // UVAA total power, W; 0 selects K * p_k at load time
  Bounds bounds;
  double d_min_uav = 5.0;
  double eta_paa = 1.0;
  double eta_uvaa = 1.0;
  ChannelParams channel;
  AeroParams aero;
  EavesMode eaves_mode = EavesMode::Octd;
  OctdAggregate octd_aggregate = OctdAggregate::Max;

  int uav_count() const { return static_cast<int>(uav_init.size()); }
  int device_count() const { return static_cast<int>(devices.size()); }

  friend bool operator==(const Scenario&, const Scenario&);
};

bool operator==(const PaaGeometry&, const PaaGeometry&);
bool operator==(const ChannelParams&, const ChannelParams&);
bool operator==(const AeroParams&, const AeroParams&);
bool operator==(const Bounds&, const Bounds&);

// Fills derived defaults (element spacing, p_u) and checks every invariant.
// Throws ValidationError naming the first violated invariant.
Scenario finalize(Scenario s);
void validate(const Scenario& s);

// Scenario file I/O. Schema: docs/scenario_schema.md.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

struct GenerateOptions {
  double mbs_to_box = 150.0;  // x offset of the swarm box's near edge
  double z_min = 70.0;
  double z_max = 120.0;
  double d_min_uav = 5.0;
  double device_radius_min = 800.0;
  double device_radius_max = 1200.0;
  double azimuth_span_deg = 80.0;
  int eavesdroppers = 1;
  int max_attempts_per_uav = 10000;
};

// Deterministic random world: UAVs uniform in an area x area box (rejection-sampled for
// d_min), devices on a distant arc, eavesdroppers between the swarm and the devices.
Scenario generate_scenario(std::uint64_t seed, int uav_count, int device_count, double area,
                           const GenerateOptions& opts = {});

// generate_scenario(1, 16, 8, 100): the bundled scenarios/default.json.
Scenario default_scenario();

// Same world with the eavesdropper set replaced by `count` generated positions
// (the first ones kept when shrinking). Used by eavesdropper sweeps.
Scenario with_eavesdroppers(const Scenario& s, int count, std::uint64_t seed);

std::string to_string(EavesMode m);
EavesMode eaves_mode_from_string(const std::string& s);

}  // namespace uavrelay
