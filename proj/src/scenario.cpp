#include "uavrelay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

void require(bool ok, const std::string& invariant) {
  if (!ok) throw ValidationError("scenario invalid: " + invariant);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

Vec3 unit(const Vec3& v) { return v * (1.0 / norm(v)); }

// Eavesdropper ring: beyond the swarm box, short of the device arc.
Position3D sample_eavesdropper(std::mt19937_64& rng, double r_lo, double r_hi, double half_span_rad) {
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  std::uniform_real_distribution<double> az(-half_span_rad, half_span_rad);
  const double r = radius(rng);
  const double phi = az(rng);
  return {r * std::cos(phi), r * std::sin(phi), 0.0};
}

}  // namespace

std::vector<Vec3> PaaGeometry::element_offsets() const {
  // In-plane basis (u horizontal, v "up" within the plane).
  const Vec3 n = unit(normal);
  Vec3 u = cross(Vec3{0.0, 0.0, 1.0}, n);
  if (norm(u) < 1e-12) u = Vec3{1.0, 0.0, 0.0};
  u = unit(u);
  const Vec3 v = cross(n, u);

  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(element_count()));
  const double r0 = 0.5 * (rows - 1);
  const double c0 = 0.5 * (cols - 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out.push_back(u * ((c - c0) * element_spacing) + v * ((r - r0) * element_spacing));
  return out;
}

Vec3 Bounds::clamp(const Vec3& p) const {
  return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y), std::clamp(p.z, lo.z, hi.z)};
}

bool operator==(const PaaGeometry& a, const PaaGeometry& b) {
  return a.rows == b.rows && a.cols == b.cols && a.element_spacing == b.element_spacing &&
         a.center == b.center && a.normal == b.normal;
}
bool operator==(const ChannelParams& a, const ChannelParams& b) {
  return a.a == b.a && a.b == b.b && a.beta0_db == b.beta0_db && a.mu_db == b.mu_db &&
         a.alpha_los == b.alpha_los && a.alpha_nlos == b.alpha_nlos && a.alpha_g == b.alpha_g &&
         a.noise_psd_dbm_hz == b.noise_psd_dbm_hz && a.bandwidth_hz == b.bandwidth_hz &&
         a.carrier_freq_hz == b.carrier_freq_hz;
}
bool operator==(const AeroParams& a, const AeroParams& b) {
  return a.p_blade == b.p_blade && a.p_induced == b.p_induced && a.u_tip == b.u_tip && a.u_0 == b.u_0 &&
         a.d_0 == b.d_0 && a.rho == b.rho && a.s == b.s && a.area == b.area && a.mass == b.mass &&
         a.g == b.g;
}
bool operator==(const Bounds& a, const Bounds& b) { return a.lo == b.lo && a.hi == b.hi; }

bool operator==(const Scenario& a, const Scenario& b) {
  return a.paa == b.paa && a.p_s == b.p_s && a.devices == b.devices && a.eavesdroppers == b.eavesdroppers &&
         a.uav_init == b.uav_init && a.p_k == b.p_k && a.p_u == b.p_u && a.bounds == b.bounds &&
         a.d_min_uav == b.d_min_uav && a.eta_paa == b.eta_paa && a.eta_uvaa == b.eta_uvaa &&
         a.channel == b.channel && a.aero == b.aero && a.eaves_mode == b.eaves_mode &&
         a.octd_aggregate == b.octd_aggregate;
}

void validate(const Scenario& s) {
  const auto ground_or_air = [](const Position3D& p) { return is_finite(p) && p.z >= 0.0; };

  require(s.paa.rows >= 1 && s.paa.cols >= 1, "PAA needs rows >= 1 and cols >= 1");
  require(positive(s.paa.element_spacing), "PAA element_spacing > 0");
  require(is_finite(s.paa.center) && s.paa.center.z >= 0.0, "PAA center finite with z >= 0");
  require(is_finite(s.paa.normal) && norm(s.paa.normal) > 0.0, "PAA normal must be a nonzero vector");

  const ChannelParams& ch = s.channel;
  require(std::isfinite(ch.a) && std::isfinite(ch.b), "S-curve parameters finite");
  require(ch.alpha_g > 2.0, "alpha_g > 2 (G2G path-loss exponent)");
  require(positive(ch.alpha_los) && positive(ch.alpha_nlos), "LoS/NLoS path-loss exponents > 0");
  require(positive(ch.bandwidth_hz), "bandwidth > 0");
  require(positive(ch.carrier_freq_hz), "carrier frequency > 0 (wavelength > 0)");
  require(std::isfinite(ch.beta0_db) && std::isfinite(ch.mu_db) && std::isfinite(ch.noise_psd_dbm_hz),
          "channel dB quantities finite");

  const AeroParams& ae = s.aero;
  for (double v : {ae.p_blade, ae.p_induced, ae.u_tip, ae.u_0, ae.d_0, ae.rho, ae.s, ae.area, ae.mass, ae.g})
    require(positive(v), "aero parameters strictly positive");

  require(positive(s.p_s), "MBS power p_s > 0");
  require(positive(s.p_k), "per-UAV power p_k > 0");
  require(positive(s.p_u), "UVAA power p_u > 0");
  require(positive(s.eta_paa) && positive(s.eta_uvaa), "antenna efficiencies > 0");
  require(!s.devices.empty(), "devices non-empty");
  require(!s.eavesdroppers.empty(), "at least one eavesdropper");
  require(s.uav_count() >= 2, "K >= 2 (a swarm array needs at least two UAVs)");
  for (const auto& p : s.devices) require(ground_or_air(p), "device positions finite with z >= 0");
  for (const auto& p : s.eavesdroppers) require(ground_or_air(p), "eavesdropper positions finite with z >= 0");

  const Bounds& b = s.bounds;
  require(is_finite(b.lo) && is_finite(b.hi), "bounds finite");
  require(b.lo.x <= b.hi.x && b.lo.y <= b.hi.y && b.lo.z <= b.hi.z, "bounds lo <= hi");
  require(b.lo.z >= 0.0, "Z_min >= 0");
  require(std::isfinite(s.d_min_uav) && s.d_min_uav >= 0.0, "d_min_uav >= 0");

  for (const auto& p : s.uav_init) require(ground_or_air(p) && b.contains(p), "UAV initial positions inside bounds (C4-C6)");
  for (std::size_t i = 0; i < s.uav_init.size(); ++i)
    for (std::size_t j = i + 1; j < s.uav_init.size(); ++j)
      require(distance(s.uav_init[i], s.uav_init[j]) >= s.d_min_uav,
              "UAV initial positions pairwise >= d_min_uav (C9): UAVs " + std::to_string(i + 1) + " and " +
                  std::to_string(j + 1));
}

Scenario finalize(Scenario s) {
  if (s.paa.element_spacing == 0.0 && s.channel.carrier_freq_hz > 0.0)
    s.paa.element_spacing = 0.5 * s.channel.wavelength();
  if (s.p_u == 0.0) s.p_u = s.uav_count() * s.p_k;
  validate(s);
  return s;
}

std::string to_string(EavesMode m) { return m == EavesMode::Octd ? "OCTD" : "CTSD"; }

EavesMode eaves_mode_from_string(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (u == "OCTD") return EavesMode::Octd;
  if (u == "CTSD") return EavesMode::Ctsd;
  throw ParseError("unknown eavesdropper mode '" + s + "' (expected OCTD or CTSD)");
}

// ---- JSON ----------------------------------------------------------------------------

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-element [x, y, z] array, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Vec3> vecs_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of positions");
  std::vector<Vec3> out;
  for (const auto& e : j) out.push_back(vec_from_json(e));
  return out;
}

json vecs_to_json(const std::vector<Vec3>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(vec_to_json(p));
  return a;
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    if (j.contains("paa")) {
      const auto& p = j.at("paa");
      read_opt(p, "rows", s.paa.rows);
      read_opt(p, "cols", s.paa.cols);
      read_opt(p, "element_spacing_m", s.paa.element_spacing);
      if (p.contains("center")) s.paa.center = vec_from_json(p.at("center"));
      if (p.contains("normal")) s.paa.normal = vec_from_json(p.at("normal"));
    }
    read_opt(j, "p_s_w", s.p_s);
    read_opt(j, "p_k_w", s.p_k);
    read_opt(j, "p_u_w", s.p_u);
    read_opt(j, "d_min_uav_m", s.d_min_uav);
    read_opt(j, "eta_paa", s.eta_paa);
    read_opt(j, "eta_uvaa", s.eta_uvaa);
    s.devices = vecs_from_json(j.at("devices"));
    s.eavesdroppers = vecs_from_json(j.at("eavesdroppers"));
    s.uav_init = vecs_from_json(j.at("uav_init"));
    if (j.contains("bounds")) {
      s.bounds.lo = vec_from_json(j.at("bounds").at("min"));
      s.bounds.hi = vec_from_json(j.at("bounds").at("max"));
    }
    if (j.contains("channel")) {
      const auto& c = j.at("channel");
      read_opt(c, "a", s.channel.a);
      read_opt(c, "b", s.channel.b);
      read_opt(c, "beta0_db", s.channel.beta0_db);
      read_opt(c, "mu_db", s.channel.mu_db);
      read_opt(c, "alpha_los", s.channel.alpha_los);
      read_opt(c, "alpha_nlos", s.channel.alpha_nlos);
      read_opt(c, "alpha_g", s.channel.alpha_g);
      read_opt(c, "noise_psd_dbm_hz", s.channel.noise_psd_dbm_hz);
      read_opt(c, "bandwidth_hz", s.channel.bandwidth_hz);
      read_opt(c, "carrier_freq_hz", s.channel.carrier_freq_hz);
    }
    if (j.contains("aero")) {
      const auto& a = j.at("aero");
      read_opt(a, "p_blade_w", s.aero.p_blade);
      read_opt(a, "p_induced_w", s.aero.p_induced);
      read_opt(a, "u_tip_mps", s.aero.u_tip);
      read_opt(a, "u_0_mps", s.aero.u_0);
      read_opt(a, "d_0", s.aero.d_0);
      read_opt(a, "rho", s.aero.rho);
      read_opt(a, "s", s.aero.s);
      read_opt(a, "area_m2", s.aero.area);
      read_opt(a, "mass_kg", s.aero.mass);
      read_opt(a, "g", s.aero.g);
    }
    if (j.contains("eaves_mode")) s.eaves_mode = eaves_mode_from_string(j.at("eaves_mode").get<std::string>());
    if (j.contains("octd_aggregate")) {
      const auto agg = j.at("octd_aggregate").get<std::string>();
      if (agg == "max")
        s.octd_aggregate = OctdAggregate::Max;
      else if (agg == "sum")
        s.octd_aggregate = OctdAggregate::Sum;
      else
        throw ParseError("octd_aggregate must be \"max\" or \"sum\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  return finalize(std::move(s));
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["paa"] = {{"rows", s.paa.rows},
              {"cols", s.paa.cols},
              {"element_spacing_m", s.paa.element_spacing},
              {"center", vec_to_json(s.paa.center)},
              {"normal", vec_to_json(s.paa.normal)}};
  j["p_s_w"] = s.p_s;
  j["p_k_w"] = s.p_k;
  j["p_u_w"] = s.p_u;
  j["d_min_uav_m"] = s.d_min_uav;
  j["eta_paa"] = s.eta_paa;
  j["eta_uvaa"] = s.eta_uvaa;
  j["devices"] = vecs_to_json(s.devices);
  j["eavesdroppers"] = vecs_to_json(s.eavesdroppers);
  j["uav_init"] = vecs_to_json(s.uav_init);
  j["bounds"] = {{"min", vec_to_json(s.bounds.lo)}, {"max", vec_to_json(s.bounds.hi)}};
  const auto& c = s.channel;
  j["channel"] = {{"a", c.a},
                  {"b", c.b},
                  {"beta0_db", c.beta0_db},
                  {"mu_db", c.mu_db},
                  {"alpha_los", c.alpha_los},
                  {"alpha_nlos", c.alpha_nlos},
                  {"alpha_g", c.alpha_g},
                  {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
                  {"bandwidth_hz", c.bandwidth_hz},
                  {"carrier_freq_hz", c.carrier_freq_hz}};
  const auto& a = s.aero;
  j["aero"] = {{"p_blade_w", a.p_blade}, {"p_induced_w", a.p_induced}, {"u_tip_mps", a.u_tip},
               {"u_0_mps", a.u_0},       {"d_0", a.d_0},               {"rho", a.rho},
               {"s", a.s},               {"area_m2", a.area},          {"mass_kg", a.mass},
               {"g", a.g}};
  j["eaves_mode"] = to_string(s.eaves_mode);
  j["octd_aggregate"] = s.octd_aggregate == OctdAggregate::Max ? "max" : "sum";
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write scenario file " + path.string());
  // max_digits10 keeps the round trip exact.
  out << scenario_to_json(s).dump(2) << '\n';
}

// ---- generation ----------------------------------------------------------------------

Scenario generate_scenario(std::uint64_t seed, int uav_count, int device_count, double area,
                           const GenerateOptions& opts) {
  if (uav_count < 2) throw ValidationError("scenario invalid: K >= 2 (a swarm array needs at least two UAVs)");
  if (device_count < 1) throw ValidationError("scenario invalid: T >= 1");
  if (!(area > 0.0)) throw ValidationError("scenario invalid: area > 0");

  std::mt19937_64 rng(seed);
  Scenario s;
  s.d_min_uav = opts.d_min_uav;
  s.bounds.lo = {opts.mbs_to_box, -0.5 * area, opts.z_min};
  s.bounds.hi = {opts.mbs_to_box + area, 0.5 * area, opts.z_max};
  s.paa.normal = unit(s.bounds.center() - s.paa.center);

  std::uniform_real_distribution<double> ux(s.bounds.lo.x, s.bounds.hi.x);
  std::uniform_real_distribution<double> uy(s.bounds.lo.y, s.bounds.hi.y);
  std::uniform_real_distribution<double> uz(s.bounds.lo.z, s.bounds.hi.z);
  for (int k = 0; k < uav_count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < opts.max_attempts_per_uav && !placed; ++attempt) {
      const Position3D p{ux(rng), uy(rng), uz(rng)};
      placed = std::all_of(s.uav_init.begin(), s.uav_init.end(),
                           [&](const Position3D& q) { return distance(p, q) >= s.d_min_uav; });
      if (placed) s.uav_init.push_back(p);
    }
    if (!placed)
      throw PlacementError("cannot place UAV " + std::to_string(k + 1) + " of " + std::to_string(uav_count) +
                           " at pairwise distance >= " + std::to_string(s.d_min_uav) + " m in a " +
                           std::to_string(area) + " m box");
  }

  const double half_span = 0.5 * opts.azimuth_span_deg * kPi / 180.0;
  std::uniform_real_distribution<double> radius(opts.device_radius_min, opts.device_radius_max);
  std::uniform_real_distribution<double> az(-half_span, half_span);
  for (int i = 0; i < device_count; ++i) {
    const double r = radius(rng);
    const double phi = az(rng);
    s.devices.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
  }

  const double e_lo = s.bounds.hi.x + 100.0;
  const double e_hi = std::max(e_lo + 1.0, opts.device_radius_min - 100.0);
  for (int e = 0; e < opts.eavesdroppers; ++e) s.eavesdroppers.push_back(sample_eavesdropper(rng, e_lo, e_hi, half_span));

  return finalize(std::move(s));
}

Scenario default_scenario() { return generate_scenario(1, 16, 8, 100.0); }

Scenario with_eavesdroppers(const Scenario& s, int count, std::uint64_t seed) {
  if (count < 1) throw ValidationError("scenario invalid: at least one eavesdropper");
  Scenario out = s;
  out.eavesdroppers.resize(std::min<std::size_t>(out.eavesdroppers.size(), static_cast<std::size_t>(count)));
  std::mt19937_64 rng(seed);
  const GenerateOptions defaults;
  const double e_lo = s.bounds.hi.x + 100.0;
  const double e_hi = std::max(e_lo + 1.0, defaults.device_radius_min - 100.0);
  const double half_span = 0.5 * defaults.azimuth_span_deg * kPi / 180.0;
  while (out.eavesdroppers.size() < static_cast<std::size_t>(count))
    out.eavesdroppers.push_back(sample_eavesdropper(rng, e_lo, e_hi, half_span));
  validate(out);
  return out;
}

}  // namespace uavrelay
