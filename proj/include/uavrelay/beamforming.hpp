#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "uavrelay/geometry.hpp"

namespace uavrelay {

// theta: elevation from +z in [0, pi]; phi: azimuth in [-pi, pi].
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
};

Vec3 unit_vector(Direction d);

// Direction of `to` as seen from `from`. Throws DomainError for coincident points.
Direction direction_between(const Position3D& from, const Position3D& to);

struct ArraySpec {
  std::vector<Vec3> offsets;   // element position relative to the array centre, m
  std::vector<double> weights;  // excitation current weights in [0, 1]
  double wavelength = 0.0;

  // Throws ValidationError if sizes differ, are empty, or a weight leaves [0, 1].
  void validate() const;
};

// Midpoint product grid over (theta, phi). Each theta row carries the exact integral of
// sin(theta) over its cell, so the weights integrate the constant 1 to 4*pi exactly.
class GainQuadrature {
 public:
  GainQuadrature(int n_theta, int n_phi);

  // Grid spacing in degrees: 2 -> 90 x 180 nodes, 5 -> 36 x 72.
  static GainQuadrature with_resolution_deg(double deg);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return weights_.size(); }

  // Node k = i * n_phi + j.
  std::span<const double> weights() const { return weights_; }
  std::span<const Vec3> directions() const { return directions_; }
  Direction node(std::size_t k) const;

  // Unit-vector components, one array per axis.
  std::span<const double> ux() const { return ux_; }
  std::span<const double> uy() const { return uy_; }
  std::span<const double> uz() const { return uz_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> thetas_;
  std::vector<double> phis_;
  std::vector<double> weights_;
  std::vector<Vec3> directions_;
  std::vector<double> ux_;
  std::vector<double> uy_;
  std::vector<double> uz_;
};

// sin and cos of n phases at once; accurate to a few ulp for |phase| < 1e6.
void sincos_batch(const double* phase, double* sin_out, double* cos_out, std::size_t n);

// Per-element initial phase that co-phases the array toward `target`.
std::vector<double> steering_phases(const ArraySpec& spec, Direction target);

// Complex excitation I_m * exp(j Psi_m) of each element.
std::vector<std::complex<double>> steered_excitation(const ArraySpec& spec, Direction target);

std::complex<double> array_factor(const ArraySpec& spec, Direction target, Direction eval_dir);

// Integral of |AF|^2 sin(theta) over the sphere on the supplied grid.
double pattern_integral(const ArraySpec& spec, Direction target, const GainQuadrature& quad);

// 4*pi*|AF(eval)|^2*eta / integral. Throws DegenerateArrayError if all weights are zero.
double array_gain(const ArraySpec& spec, Direction target, Direction eval_dir, const GainQuadrature& quad,
                  double eta);

// Gains toward several directions sharing one pattern integral.
std::vector<double> array_gains(const ArraySpec& spec, Direction target, std::span<const Direction> eval_dirs,
                                const GainQuadrature& quad, double eta);

// For an array whose element positions never change (the base-station panel), the
// quadrature sum of |AF|^2 is the Hermitian form e^H C e with
// C_mn = sum_k w_k exp(j c (r_m - r_n) . u_k). Precomputing C makes the pattern integral
// independent of the grid size.
class CouplingMatrix {
 public:
  CouplingMatrix(std::span<const Vec3> offsets, double wavelength, const GainQuadrature& quad);

  std::size_t size() const { return n_; }
  double pattern_integral(std::span<const std::complex<double>> excitation) const;

 private:
  std::size_t n_;
  std::vector<std::complex<double>> c_;  // row-major n x n
};

struct PatternSample {
  double theta = 0.0;
  double phi = 0.0;
  double gain_db = 0.0;
};

// Gain over every quadrature node (for beam-pattern maps).
std::vector<PatternSample> sample_pattern(const ArraySpec& spec, Direction target, const GainQuadrature& quad,
                                          double eta);

// CSV: theta_rad,phi_rad,gain_db
void write_pattern_csv(std::ostream& out, std::span<const PatternSample> samples);

}  // namespace uavrelay
