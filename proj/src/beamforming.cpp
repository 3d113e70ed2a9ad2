#include "uavrelay/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

double phase_constant(double wavelength) { return 2.0 * kPi / wavelength; }

double weight_sum(const ArraySpec& spec) { return std::accumulate(spec.weights.begin(), spec.weights.end(), 0.0); }

}  // namespace

Vec3 unit_vector(Direction d) {
  const double st = std::sin(d.theta);
  return {st * std::cos(d.phi), st * std::sin(d.phi), std::cos(d.theta)};
}

Direction direction_between(const Position3D& from, const Position3D& to) {
  const Vec3 v = to - from;
  const double d = norm(v);
  if (d == 0.0) throw DomainError("direction between coincident points is undefined");
  return {std::acos(std::clamp(v.z / d, -1.0, 1.0)), std::atan2(v.y, v.x)};
}

void ArraySpec::validate() const {
  if (offsets.empty()) throw ValidationError("array needs at least one element");
  if (offsets.size() != weights.size()) throw ValidationError("array offsets and weights differ in length");
  for (double w : weights)
    if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("excitation weights must lie in [0, 1]");
  if (!(wavelength > 0.0)) throw ValidationError("wavelength must be positive");
}

// ---- quadrature ----------------------------------------------------------------------

GainQuadrature::GainQuadrature(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 8 || n_phi < 8) throw ValidationError("quadrature needs n_theta, n_phi >= 8");
  const double dtheta = kPi / n_theta;
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) thetas_.push_back((i + 0.5) * dtheta);
  for (int j = 0; j < n_phi; ++j) phis_.push_back(-kPi + (j + 0.5) * dphi);

  weights_.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  directions_.reserve(weights_.capacity());
  for (int i = 0; i < n_theta; ++i) {
    const double row = (std::cos(i * dtheta) - std::cos((i + 1) * dtheta)) * dphi;
    for (int j = 0; j < n_phi; ++j) {
      weights_.push_back(row);
      directions_.push_back(unit_vector({thetas_[i], phis_[j]}));
      ux_.push_back(directions_.back().x);
      uy_.push_back(directions_.back().y);
      uz_.push_back(directions_.back().z);
    }
  }
}

GainQuadrature GainQuadrature::with_resolution_deg(double deg) {
  if (!(deg > 0.0)) throw ValidationError("quadrature resolution must be positive");
  return GainQuadrature(static_cast<int>(std::lround(180.0 / deg)), static_cast<int>(std::lround(360.0 / deg)));
}

Direction GainQuadrature::node(std::size_t k) const {
  return {thetas_[k / static_cast<std::size_t>(n_phi_)], phis_[k % static_cast<std::size_t>(n_phi_)]};
}

// ---- fast trig -----------------------------------------------------------------------

void sincos_batch(const double* phase, double* sin_out, double* cos_out, std::size_t n) {
  // Reduce by 2 pi (Cody-Waite, three parts), evaluate the minimax kernels at r / 4 and
  // double the angle twice. No branches or integer lanes, so the loop vectorizes.
  constexpr double kInvTwoPi = 1.59154943091895335769e-01;
  constexpr double kP1 = 6.28318530693650245667e+00;
  constexpr double kP2 = 2.43084020252158639064e-10;
  constexpr double kP3 = 8.08906499484466582320e-21;
  constexpr double kRound = 6755399441055744.0;  // 1.5 * 2^52
  for (std::size_t i = 0; i < n; ++i) {
    const double x = phase[i];
    const double q = (x * kInvTwoPi + kRound) - kRound;
    const double r = 0.25 * (((x - q * kP1) - q * kP2) - q * kP3);
    const double z = r * r;
    const double s =
        r + r * z *
                (-1.66666666666666324348e-01 +
                 z * (8.33333333332248946124e-03 +
                      z * (-1.98412698298579493134e-04 +
                           z * (2.75573137070700676789e-06 + z * (-2.50507602534068634195e-08 + z * 1.58969099521155010221e-10)))));
    const double c =
        1.0 - 0.5 * z +
        z * z *
            (4.16666666666666019037e-02 +
             z * (-1.38888888888741095749e-03 +
                  z * (2.48015872894767294178e-05 +
                       z * (-2.75573143513906633035e-07 + z * (2.08757232129817482790e-09 + z * -1.13596475577881948265e-11)))));
    const double s2 = 2.0 * s * c;
    const double c2 = (c - s) * (c + s);
    sin_out[i] = 2.0 * s2 * c2;
    cos_out[i] = (c2 - s2) * (c2 + s2);
  }
}

// ---- array factor --------------------------------------------------------------------

std::vector<double> steering_phases(const ArraySpec& spec, Direction target) {
  const double cp = phase_constant(spec.wavelength);
  const Vec3 u = unit_vector(target);
  std::vector<double> psi;
  psi.reserve(spec.offsets.size());
  for (const auto& r : spec.offsets) psi.push_back(-cp * dot(r, u));
  return psi;
}

std::vector<std::complex<double>> steered_excitation(const ArraySpec& spec, Direction target) {
  const auto psi = steering_phases(spec, target);
  std::vector<std::complex<double>> e(psi.size());
  for (std::size_t m = 0; m < psi.size(); ++m) e[m] = std::polar(spec.weights[m], psi[m]);
  return e;
}

std::complex<double> array_factor(const ArraySpec& spec, Direction target, Direction eval_dir) {
  const double cp = phase_constant(spec.wavelength);
  const auto psi = steering_phases(spec, target);
  const Vec3 u = unit_vector(eval_dir);
  std::complex<double> af{0.0, 0.0};
  for (std::size_t m = 0; m < spec.offsets.size(); ++m)
    af += std::polar(spec.weights[m], psi[m] + cp * dot(spec.offsets[m], u));
  return af;
}

double pattern_integral(const ArraySpec& spec, Direction target, const GainQuadrature& quad) {
  const double cp = phase_constant(spec.wavelength);
  const auto exc = steered_excitation(spec, target);
  const auto ux = quad.ux();
  const auto uy = quad.uy();
  const auto uz = quad.uz();
  const auto w = quad.weights();
  const std::size_t n = w.size();

  // Element by element so the inner loops stay branch-free over the nodes.
  std::vector<double> re(n, 0.0), im(n, 0.0), ph(n), s(n), c(n);
  for (std::size_t m = 0; m < exc.size(); ++m) {
    if (exc[m] == std::complex<double>{}) continue;
    const Vec3 r = spec.offsets[m] * cp;
    for (std::size_t k = 0; k < n; ++k) ph[k] = r.x * ux[k] + r.y * uy[k] + r.z * uz[k];
    sincos_batch(ph.data(), s.data(), c.data(), n);
    const double er = exc[m].real();
    const double ei = exc[m].imag();
    for (std::size_t k = 0; k < n; ++k) {
      re[k] += er * c[k] - ei * s[k];
      im[k] += er * s[k] + ei * c[k];
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += w[k] * (re[k] * re[k] + im[k] * im[k]);
  return total;
}

std::vector<double> array_gains(const ArraySpec& spec, Direction target, std::span<const Direction> eval_dirs,
                                const GainQuadrature& quad, double eta) {
  spec.validate();
  if (weight_sum(spec) <= 0.0) throw DegenerateArrayError("array gain undefined: all excitation weights are zero");
  const double denom = pattern_integral(spec, target, quad);
  std::vector<double> out;
  out.reserve(eval_dirs.size());
  for (const auto& d : eval_dirs) out.push_back(4.0 * kPi * std::norm(array_factor(spec, target, d)) * eta / denom);
  return out;
}

double array_gain(const ArraySpec& spec, Direction target, Direction eval_dir, const GainQuadrature& quad,
                  double eta) {
  return array_gains(spec, target, std::span<const Direction>(&eval_dir, 1), quad, eta).front();
}

// ---- coupling matrix -----------------------------------------------------------------

CouplingMatrix::CouplingMatrix(std::span<const Vec3> offsets, double wavelength, const GainQuadrature& quad)
    : n_(offsets.size()), c_(offsets.size() * offsets.size()) {
  const double cp = phase_constant(wavelength);
  const auto dirs = quad.directions();
  const auto w = quad.weights();
  // Phasors a_m(k) = exp(j c r_m . u_k), then C_mn = sum_k w_k a_m(k) conj(a_n(k)).
  std::vector<std::complex<double>> a(n_ * dirs.size());
  for (std::size_t m = 0; m < n_; ++m)
    for (std::size_t k = 0; k < dirs.size(); ++k) a[m * dirs.size() + k] = std::polar(1.0, cp * dot(offsets[m], dirs[k]));
  for (std::size_t m = 0; m < n_; ++m) {
    for (std::size_t n = m; n < n_; ++n) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t k = 0; k < dirs.size(); ++k) acc += w[k] * a[m * dirs.size() + k] * std::conj(a[n * dirs.size() + k]);
      c_[m * n_ + n] = acc;
      c_[n * n_ + m] = std::conj(acc);
    }
  }
}

double CouplingMatrix::pattern_integral(std::span<const std::complex<double>> e) const {
  // sum_k w_k |sum_m e_m a_m(k)|^2 = sum_mn e_m conj(e_n) C_mn
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t m = 0; m < n_; ++m) {
    std::complex<double> row{0.0, 0.0};
    for (std::size_t n = 0; n < n_; ++n) row += std::conj(e[n]) * c_[m * n_ + n];
    acc += e[m] * row;
  }
  return acc.real();
}

// ---- pattern export ------------------------------------------------------------------

std::vector<PatternSample> sample_pattern(const ArraySpec& spec, Direction target, const GainQuadrature& quad,
                                          double eta) {
  std::vector<Direction> nodes(quad.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = quad.node(k);
  const auto gains = array_gains(spec, target, nodes, quad, eta);
  std::vector<PatternSample> out;
  out.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    out.push_back({nodes[k].theta, nodes[k].phi, gains[k] > 0.0 ? 10.0 * std::log10(gains[k]) : -300.0});
  return out;
}

void write_pattern_csv(std::ostream& out, std::span<const PatternSample> samples) {
  out << "theta_rad,phi_rad,gain_db\n";
  for (const auto& s : samples) out << s.theta << ',' << s.phi << ',' << s.gain_db << '\n';
}

}  // namespace uavrelay
