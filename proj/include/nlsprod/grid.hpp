// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "nlsprod/errors.hpp"

namespace nlsprod {

using cplx = std::complex<double>;

// Uniform grid on the periodic product box [-L, L) x [0, ell).
//
// The x axis discretizes a copy of the real line truncated to [-L, L] with
// periodic wrap; this is only faithful for states whose tails at |x| = L are
// negligible, which boundary_tail_ratio() lets callers police. The y axis is
// a genuine circle of circumference ell.
struct GridSpec {
  int n = 1;            // Euclidean dimension (only n = 1 is built)
  double L = 40.0;      // half-width of the x box
  std::size_t Nx = 2048;
  double ell = 2.0 * std::numbers::pi;  // torus circumference
  std::size_t Ny = 64;

  GridSpec() = default;
  GridSpec(int n_, double L_, std::size_t Nx_, double ell_, std::size_t Ny_);

  static GridSpec desk_scale() { return {}; }
  static GridSpec coarse(double L_ = 20.0, std::size_t Nx_ = 256,
                         std::size_t Ny_ = 16) {
    return GridSpec(1, L_, Nx_, 2.0 * std::numbers::pi, Ny_);
  }

  double hx() const { return 2.0 * L / static_cast<double>(Nx); }
  double hy() const { return ell / static_cast<double>(Ny); }
  double vol() const { return ell; }                // vol(T^1)
  double domain_volume() const { return 2.0 * L * ell; }
  double cell_volume() const { return hx() * hy(); }
  std::size_t num_points() const { return Nx * Ny; }

  double x(std::size_t i) const { return -L + static_cast<double>(i) * hx(); }
  double y(std::size_t j) const { return static_cast<double>(j) * hy(); }

  /// Signed mode index in [-N/2, N/2).
  static long fold(std::size_t m, std::size_t N) {
    return m < N / 2 ? static_cast<long>(m)
                     : static_cast<long>(m) - static_cast<long>(N);
  }
  double xi(std::size_t m) const {
    return std::numbers::pi / L * static_cast<double>(fold(m, Nx));
  }
  double mu(std::size_t m) const {
    return 2.0 * std::numbers::pi / ell * static_cast<double>(fold(m, Ny));
  }

  bool operator==(const GridSpec&) const = default;
};

/// Complex samples u(x_i, y_j), row-major with x outer and y inner.
struct Field {
  GridSpec spec;
  std::vector<cplx> values;

  Field() = default;
  explicit Field(const GridSpec& s) : spec(s), values(s.num_points()) {}

  cplx& at(std::size_t i, std::size_t j) { return values[i * spec.Ny + j]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return values[i * spec.Ny + j];
  }
  std::size_t size() const { return values.size(); }
};

/// Fourier coefficients of a Field under the normalization documented in
/// fft.hpp: values[j] = sum_m modes[m] e^{+i...}, and
/// sum |values|^2 * hx * hy = (2L * ell) * sum |modes|^2 (Parseval).
struct SpectrumView {
  GridSpec spec;
  std::vector<cplx> modes;

  cplx& at(std::size_t i, std::size_t j) { return modes[i * spec.Ny + j]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return modes[i * spec.Ny + j];
  }
};

struct NormReport {
  double mass_sq = 0.0;   // integral of |u|^2
  double kinetic_x = 0.0; // integral of |d_x u|^2
  double kinetic_y = 0.0; // integral of |d_y u|^2
};

Field make_field(const GridSpec& spec,
                 const std::function<cplx(double, double)>& f);

SpectrumView transform_forward(const Field& u);
Field transform_backward(const SpectrumView& s);

/// Delta_x u + lambda_y * Delta_y u via the multiplier -(xi^2 + lambda mu^2).
Field laplacian(const Field& u, double lambda_y = 1.0);

NormReport norms(const Field& u);
double mass_sq(const Field& u);

/// (integral |u|^p)^(1/p), rectangle rule; p >= 1 required.
double lp_norm(const Field& u, double p);

/// integral of |u|^p (without the 1/p root)
double lp_norm_pow(const Field& u, double p);

/// e^{i theta} u(x + tau, y). Grid-resolved tau uses an exact circular
/// shift; otherwise a spectral phase ramp (documented sub-grid path).
Field shift_phase(const Field& u, double tau, double theta);

/// max |u| on the x-boundary column divided by max |u| overall; small values
/// certify that the periodic truncation of the real line is faithful.
double boundary_tail_ratio(const Field& u);

/// ratio ||grad_y u||_L2 / ||u||_L2, the y-dependence metric.
double y_variation(const Field& u);

bool all_finite(const Field& u);

/// Per-complex-element multiplier weights xi^2 + lambda*mu^2, row-major.
std::vector<double> laplacian_weights(const GridSpec& spec, double lambda_y);

/// Complex Gaussian field supported on modes |m| <= modes_per_axis on each
/// axis; unnormalized, deterministic in the seed.
Field random_band_limited(const GridSpec& spec, long modes_per_axis,
                          std::uint64_t seed);

// Binary field dump. Little-endian header
//   magic "NLSF" | version u32 | n u32 | Nx u32 | Ny u32 | L f64 | ell f64
// followed by Nx^n * Ny (re, im) f64 pairs, x outer, y inner.
void save_field(const Field& u, const std::string& path);
Field load_field(const std::string& path);

}  // namespace nlsprod
