#include <doctest.h>

#include <cmath>
#include <random>

#include "uavrelay/errors.hpp"
#include "uavrelay/link_budget.hpp"

using namespace uavrelay;

namespace {

const GainQuadrature& quad5() {
  static const GainQuadrature q = GainQuadrature::with_resolution_deg(5.0);
  return q;
}

// Scalar restatement of the channel model, kept free of library helpers.
double oracle_gain(bool ground_to_ground, const Vec3& a, const Vec3& b) {
  const double dh = std::hypot(b.x - a.x, b.y - a.y);
  const double dv = std::abs(b.z - a.z);
  const double d = std::sqrt(dh * dh + dv * dv);
  if (ground_to_ground) return 1e-6 * std::pow(d, -3.5);
  const double zeta = dh > 0 ? std::atan(dv / dh) * 180.0 / 3.14159265358979323846 : 90.0;
  const double p = 1.0 / (1.0 + 9.61 * std::exp(-0.16 * (zeta - 9.61)));
  return p * 1e-6 * std::pow(d, -2.5) + (1.0 - p) * 1e-8 * std::pow(d, -3.5);
}

Vec3 oracle_unit(const Vec3& from, const Vec3& to) {
  const Vec3 v = to - from;
  return v * (1.0 / std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z));
}

double oracle_af2(const std::vector<Vec3>& off, const std::vector<double>& w, double lambda, const Vec3& u0, const Vec3& u) {
  double re = 0.0, im = 0.0;
  for (std::size_t m = 0; m < off.size(); ++m) {
    const double ph = 2.0 * 3.14159265358979323846 / lambda * (dot(off[m], u) - dot(off[m], u0));
    re += w[m] * std::cos(ph);
    im += w[m] * std::sin(ph);
  }
  return re * re + im * im;
}

double oracle_directivity(const std::vector<Vec3>& off, const std::vector<double>& w, double lambda, const Vec3& u0,
                          const Vec3& u) {
  double integral = 0.0;
  for (std::size_t k = 0; k < quad5().size(); ++k)
    integral += quad5().weights()[k] * oracle_af2(off, w, lambda, u0, quad5().directions()[k]);
  return 4.0 * 3.14159265358979323846 * oracle_af2(off, w, lambda, u0, u) / integral;
}

struct Fixture {
  Scenario s = default_scenario();
  std::vector<Position3D> uavs = s.uav_init;
  std::vector<double> paa_w;
  std::vector<double> uvaa_w;

  Fixture() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int m = 0; m < 36; ++m) paa_w.push_back(u(rng));
    for (int k = 0; k < 16; ++k) uvaa_w.push_back(u(rng));
  }

  ServiceContext ctx(int receiver, int device) const {
    return {receiver, uavs, paa_w, uvaa_w, s.devices[static_cast<std::size_t>(device)]};
  }
};

}  // namespace

TEST_CASE("unit SNR over 20 MHz gives 20 Mbps") {
  CHECK(legit_rate(20e6, 1.0, 5.0) == doctest::Approx(2.0e7).epsilon(1e-15));
  CHECK(legit_rate(20e6, 5.0, 1.0) == doctest::Approx(2.0e7).epsilon(1e-15));
}

TEST_CASE("MRC sums the three wiretap phases") {
  const EavesdropperSnr e{1.0, 2.0, 3.0};
  CHECK(e.combined() == 6.0);
  const std::vector<EavesdropperSnr> one{e};
  CHECK(eaves_rate(20e6, one, EavesMode::Octd) == doctest::Approx(20e6 * std::log2(7.0)).epsilon(1e-15));
  CHECK(eaves_rate(20e6, one, EavesMode::Ctsd) == eaves_rate(20e6, one, EavesMode::Octd));
}

TEST_CASE("two identical eavesdroppers: CTSD doubles the SNR, OCTD stays single") {
  const EavesdropperSnr e{0.4, 0.7, 1.9};
  const std::vector<EavesdropperSnr> one{e}, two{e, e};
  CHECK(eaves_rate(1e6, two, EavesMode::Ctsd) == doctest::Approx(1e6 * std::log2(1.0 + 2 * 3.0)).epsilon(1e-14));
  CHECK(eaves_rate(1e6, two, EavesMode::Octd) == eaves_rate(1e6, one, EavesMode::Octd));
  CHECK(eaves_rate(1e6, two, EavesMode::Octd, OctdAggregate::Sum) == doctest::Approx(2 * eaves_rate(1e6, one, EavesMode::Octd)));
}

TEST_CASE("CTSD never leaks less than OCTD") {
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> x(0.5);
  for (int i = 0; i < 500; ++i) {
    std::vector<EavesdropperSnr> es(1 + i % 6);
    for (auto& e : es) e = {x(rng), x(rng), x(rng)};
    CHECK(eaves_rate(20e6, es, EavesMode::Ctsd) >= eaves_rate(20e6, es, EavesMode::Octd));
  }
  CHECK(eaves_rate(20e6, std::vector<EavesdropperSnr>{}, EavesMode::Ctsd) == 0.0);
}

TEST_CASE("service rates match a hand-chained oracle") {
  const Fixture fx;
  const LinkBudget lb(fx.s, quad5());
  const double sigma2 = std::pow(10.0, (-174.0 - 30.0) / 10.0) * 20e6;
  const double lambda = 299792458.0 / 2.4e9;
  for (int receiver : {0, 7}) {
    for (int device : {0, 5}) {
      const auto r = lb.service(fx.ctx(receiver, device));
      const Vec3 rx = fx.uavs[static_cast<std::size_t>(receiver)];
      const Vec3 dev = fx.s.devices[static_cast<std::size_t>(device)];
      const Vec3 eav = fx.s.eavesdroppers[0];
      const auto paa_off = fx.s.paa.element_offsets();
      const Vec3 mbs = fx.s.paa.center;

      const Vec3 u0 = oracle_unit(mbs, rx);
      const double s2u = 3.6 * oracle_directivity(paa_off, fx.paa_w, lambda, u0, u0) * oracle_gain(false, mbs, rx) / sigma2;
      const double s2e = 3.6 * oracle_directivity(paa_off, fx.paa_w, lambda, u0, oracle_unit(mbs, eav)) *
                         oracle_gain(true, mbs, eav) / sigma2;

      Vec3 c{};
      for (const auto& p : fx.uavs) c += p;
      c = c * (1.0 / 16.0);
      std::vector<Vec3> uv_off;
      for (const auto& p : fx.uavs) uv_off.push_back(p - c);
      const Vec3 v0 = oracle_unit(c, dev);
      const double c2d = 1.6 * oracle_directivity(uv_off, fx.uvaa_w, lambda, v0, v0) * oracle_gain(false, c, dev) / sigma2;
      const double c2e = 1.6 * oracle_directivity(uv_off, fx.uvaa_w, lambda, v0, oracle_unit(c, eav)) *
                         oracle_gain(false, c, eav) / sigma2;
      const double u2e = 0.1 * oracle_gain(false, rx, eav) / sigma2;

      CHECK(r.snr_s2u == doctest::Approx(s2u).epsilon(1e-9));
      CHECK(r.snr_c2d == doctest::Approx(c2d).epsilon(1e-9));
      REQUIRE(r.eaves.size() == 1);
      CHECK(r.eaves[0].s2e == doctest::Approx(s2e).epsilon(1e-9));
      CHECK(r.eaves[0].u2e == doctest::Approx(u2e).epsilon(1e-9));
      CHECK(r.eaves[0].c2e == doctest::Approx(c2e).epsilon(1e-9));
      CHECK(r.r_legit == doctest::Approx(20e6 * std::log2(1.0 + std::min(s2u, c2d))).epsilon(1e-9));
      CHECK(r.r_eaves == doctest::Approx(20e6 * std::log2(1.0 + s2e + u2e + c2e)).epsilon(1e-9));
      CHECK_FALSE(r.degenerate);
    }
  }
}

TEST_CASE("zero panel weights give no legitimate rate and flag degeneracy") {
  Fixture fx;
  std::fill(fx.paa_w.begin(), fx.paa_w.end(), 0.0);
  const LinkBudget lb(fx.s, quad5());
  const auto r = lb.service(fx.ctx(0, 0));
  CHECK(r.r_legit == 0.0);
  CHECK(r.snr_s2u == 0.0);
  CHECK(r.degenerate);
  CHECK(r.eaves[0].s2e == 0.0);
  CHECK(r.eaves[0].u2e > 0.0);
}

TEST_CASE("invalid receiver index is rejected") {
  const Fixture fx;
  const LinkBudget lb(fx.s, quad5());
  CHECK_THROWS_AS(lb.service(fx.ctx(16, 0)), ValidationError);
  CHECK_THROWS_AS(lb.service(fx.ctx(-1, 0)), ValidationError);
}

TEST_CASE("legitimate rate is monotone and only the weaker leg matters") {
  for (double a : {0.1, 1.0, 10.0, 1000.0}) {
    for (double b : {0.2, 3.0, 50.0}) {
      const double r = legit_rate(20e6, a, b);
      CHECK(legit_rate(20e6, a * 1.5, b) >= r);
      CHECK(legit_rate(20e6, a, b * 1.5) >= r);
      if (a > b) CHECK(legit_rate(20e6, a * 4.0, b) == r);
      if (b > a) CHECK(legit_rate(20e6, a, b * 4.0) == r);
    }
  }
}

TEST_CASE("dropping any positive wiretap phase lowers the eavesdropper SNR") {
  const EavesdropperSnr full{0.3, 0.02, 1.1};
  for (int drop = 0; drop < 3; ++drop) {
    EavesdropperSnr e = full;
    (drop == 0 ? e.s2e : drop == 1 ? e.u2e : e.c2e) = 0.0;
    CHECK(e.combined() < full.combined());
    CHECK(eaves_rate(1e6, std::vector<EavesdropperSnr>{e}, EavesMode::Octd) <
          eaves_rate(1e6, std::vector<EavesdropperSnr>{full}, EavesMode::Octd));
  }
}

TEST_CASE("scenario eavesdropper mode is the default for a service") {
  Fixture fx;
  fx.s = with_eavesdroppers(fx.s, 3, 9);
  fx.s.eaves_mode = EavesMode::Ctsd;
  const LinkBudget lb(fx.s, quad5());
  const auto r = lb.service(fx.ctx(2, 3));
  CHECK(r.r_eaves == lb.service(fx.ctx(2, 3), EavesMode::Ctsd).r_eaves);
  CHECK(r.r_eaves >= lb.service(fx.ctx(2, 3), EavesMode::Octd).r_eaves);
  CHECK(r.eaves.size() == 3);
}
