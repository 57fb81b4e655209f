// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>

#include "nlsprod/fft.hpp"
#include "nlsprod/kernels.hpp"

namespace nlsprod {

GridSpec::GridSpec(int n_, double L_, std::size_t Nx_, double ell_,
                   std::size_t Ny_)
    : n(n_), L(L_), Nx(Nx_), ell(ell_), Ny(Ny_) {
  if (n != 1)
    throw ValidationError("GridSpec: only the R x T^1 build (n = 1) is supported");
  if (Nx < 16 || (Nx & (Nx - 1)) != 0)
    throw ValidationError("GridSpec: Nx must be a power of two >= 16");
  if (Ny < 4 || (Ny & (Ny - 1)) != 0)
    throw ValidationError("GridSpec: Ny must be a power of two >= 4");
  if (!(L > 0.0)) throw ValidationError("GridSpec: L must be positive");
  if (!(ell > 0.0)) throw ValidationError("GridSpec: ell must be positive");
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ValidationError("fields live on different grids");
}

void require_shape(const Field& u) {
  if (u.values.size() != u.spec.num_points())
    throw ValidationError("field sample count does not match its grid");
}

}  // namespace

Field make_field(const GridSpec& spec,
                 const std::function<cplx(double, double)>& f) {
  Field u(spec);
  for (std::size_t i = 0; i < spec.Nx; ++i) {
    const double xv = spec.x(i);
    for (std::size_t j = 0; j < spec.Ny; ++j) u.at(i, j) = f(xv, spec.y(j));
  }
  return u;
}

SpectrumView transform_forward(const Field& u) {
  require_shape(u);
  SpectrumView s{u.spec, std::vector<cplx>(u.size())};
  fft2d_for(u.spec.Nx, u.spec.Ny).forward(u.values.data(), s.modes.data());
  return s;
}

Field transform_backward(const SpectrumView& s) {
  if (s.modes.size() != s.spec.num_points())
    throw ValidationError("spectrum mode count does not match its grid");
  Field u(s.spec);
  fft2d_for(s.spec.Nx, s.spec.Ny).backward(s.modes.data(), u.values.data());
  return u;
}

std::vector<double> laplacian_weights(const GridSpec& spec, double lambda_y) {
  std::vector<double> w(spec.num_points());
  for (std::size_t i = 0; i < spec.Nx; ++i) {
    const double xi2 = spec.xi(i) * spec.xi(i);
    for (std::size_t j = 0; j < spec.Ny; ++j) {
      const double mu = spec.mu(j);
      w[i * spec.Ny + j] = xi2 + lambda_y * mu * mu;
    }
  }
  return w;
}

Field laplacian(const Field& u, double lambda_y) {
  if (!(lambda_y > 0.0))
    throw ValidationError("laplacian: anisotropy weight must be positive");
  SpectrumView s = transform_forward(u);
  std::vector<double> w = laplacian_weights(u.spec, lambda_y);
  for (double& wi : w) wi = -wi;
  kernels::multiply_real(s.modes.data(), w.data(), s.modes.size());
  return transform_backward(s);
}

NormReport norms(const Field& u) {
  require_shape(u);
  NormReport r;
  r.mass_sq = u.spec.cell_volume() *
              kernels::sum_abs2(u.values.data(), u.size());
  SpectrumView s = transform_forward(u);
  const double dv = u.spec.domain_volume();
  std::vector<double> wx(u.size()), wy(u.size());
  for (std::size_t i = 0; i < u.spec.Nx; ++i) {
    const double xi2 = u.spec.xi(i) * u.spec.xi(i);
    for (std::size_t j = 0; j < u.spec.Ny; ++j) {
      const double mu = u.spec.mu(j);
      wx[i * u.spec.Ny + j] = xi2;
      wy[i * u.spec.Ny + j] = mu * mu;
    }
  }
  r.kinetic_x =
      dv * kernels::sum_abs2_weighted(s.modes.data(), wx.data(), u.size());
  r.kinetic_y =
      dv * kernels::sum_abs2_weighted(s.modes.data(), wy.data(), u.size());
  return r;
}

double mass_sq(const Field& u) {
  require_shape(u);
  return u.spec.cell_volume() * kernels::sum_abs2(u.values.data(), u.size());
}

double lp_norm_pow(const Field& u, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_norm: p must be >= 1");
  require_shape(u);
  double acc = 0.0;
  if (p == 2.0) {
    acc = kernels::sum_abs2(u.values.data(), u.size());
  } else {
    for (const cplx& v : u.values) acc += std::pow(std::abs(v), p);
  }
  return acc * u.spec.cell_volume();
}

double lp_norm(const Field& u, double p) {
  return std::pow(lp_norm_pow(u, p), 1.0 / p);
}

Field shift_phase(const Field& u, double tau, double theta) {
  require_shape(u);
  const cplx rot = std::polar(1.0, theta);
  const double steps = tau / u.spec.hx();
  const double rounded = std::round(steps);
  Field out(u.spec);
  if (std::abs(steps - rounded) < 1e-9) {
    // grid-resolved shift: circular roll of whole x rows
    const long s = static_cast<long>(rounded);
    const long nx = static_cast<long>(u.spec.Nx);
    for (long i = 0; i < nx; ++i) {
      long src = (i + s) % nx;
      if (src < 0) src += nx;
      for (std::size_t j = 0; j < u.spec.Ny; ++j)
        out.at(static_cast<std::size_t>(i), j) =
            rot * u.at(static_cast<std::size_t>(src), j);
    }
    return out;
  }
  // sub-grid shift via spectral phase ramp e^{i xi tau}
  SpectrumView s = transform_forward(u);
  for (std::size_t i = 0; i < u.spec.Nx; ++i) {
    const cplx ramp = rot * std::polar(1.0, u.spec.xi(i) * tau);
    for (std::size_t j = 0; j < u.spec.Ny; ++j) s.at(i, j) *= ramp;
  }
  return transform_backward(s);
}

double boundary_tail_ratio(const Field& u) {
  require_shape(u);
  double peak = 0.0;
  for (const cplx& v : u.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  for (std::size_t j = 0; j < u.spec.Ny; ++j)
    edge = std::max(edge, std::abs(u.at(0, j)));  // x = -L, the wrap seam
  return edge / peak;
}

double y_variation(const Field& u) {
  NormReport r = norms(u);
  if (r.mass_sq <= 0.0) throw ValidationError("y_variation of the zero field");
  return std::sqrt(r.kinetic_y / r.mass_sq);
}

Field random_band_limited(const GridSpec& spec, long modes_per_axis,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectrumView s{spec, std::vector<cplx>(spec.num_points())};
  for (std::size_t i = 0; i < spec.Nx; ++i) {
    const long mx = GridSpec::fold(i, spec.Nx);
    for (std::size_t j = 0; j < spec.Ny; ++j) {
      const long my = GridSpec::fold(j, spec.Ny);
      if (std::labs(mx) <= modes_per_axis && std::labs(my) <= modes_per_axis)
        s.at(i, j) = cplx(gauss(rng), gauss(rng));
    }
  }
  return transform_backward(s);
}

bool all_finite(const Field& u) {
  for (const cplx& v : u.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

namespace {

constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void write_pod(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void save_field(const Field& u, const std::string& path) {
  require_shape(u);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  os.write(kMagic, 4);
  write_pod(os, kVersion);
  write_pod(os, static_cast<std::uint32_t>(u.spec.n));
  write_pod(os, static_cast<std::uint32_t>(u.spec.Nx));
  write_pod(os, static_cast<std::uint32_t>(u.spec.Ny));
  write_pod(os, u.spec.L);
  write_pod(os, u.spec.ell);
  os.write(reinterpret_cast<const char*>(u.values.data()),
           static_cast<std::streamsize>(sizeof(cplx) * u.values.size()));
  if (!os) throw ValidationError("short write: " + path);
}

Field load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("not a field dump (bad magic): " + path);
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kVersion)
    throw ValidationError("unsupported field dump version in " + path);
  const auto n = read_pod<std::uint32_t>(is);
  const auto nx = read_pod<std::uint32_t>(is);
  const auto ny = read_pod<std::uint32_t>(is);
  const auto L = read_pod<double>(is);
  const auto ell = read_pod<double>(is);
  GridSpec spec(static_cast<int>(n), L, nx, ell, ny);
  Field u(spec);
  is.read(reinterpret_cast<char*>(u.values.data()),
          static_cast<std::streamsize>(sizeof(cplx) * u.values.size()));
  if (!is) throw ValidationError("truncated field dump: " + path);
  return u;
}

}  // namespace nlsprod
