// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/energy.hpp"

#include <algorithm>
#include <cmath>

#include "nlsprod/kernels.hpp"

namespace nlsprod {

Params::Params(int n_, int k_, double alpha_, double lambda_)
    : n(n_), k(k_), alpha(alpha_), lambda(lambda_) {
  if (n != 1) throw ValidationError("Params: only n = 1 is built");
  if (k != 1) throw ValidationError("Params: only k = 1 is built");
  const double crit = 4.0 / static_cast<double>(n + k);
  if (!(alpha > 0.0 && alpha < crit))
    throw ValidationError("Params: subcriticality requires 0 < alpha < 4/(n+k)");
  if (!(lambda > 0.0)) throw ValidationError("Params: lambda must be positive");
  // theta(alpha) < 2 is equivalent to subcriticality; keep it checked
  if (!(theta() < 2.0)) throw ValidationError("Params: theta(alpha) must be < 2");
}

namespace {

double abs_pow(double mag, double alpha) {
  if (alpha == 1.0) return mag;
  if (alpha == 2.0) return mag * mag;
  return std::pow(mag, alpha);
}

}  // namespace

Field nonlinear_term(const Field& u, double alpha) {
  Field out(u.spec);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double mag = std::abs(u.values[i]);
    out.values[i] = abs_pow(mag, alpha) * u.values[i];
  }
  return out;
}

EnergyBreakdown energy(const Field& u, const Params& p) {
  if (!all_finite(u)) throw ValidationError("energy: field has NaN/Inf samples");
  NormReport nr = norms(u);
  EnergyBreakdown e;
  e.kinetic_x = 0.5 * nr.kinetic_x;
  e.kinetic_y = 0.5 * p.lambda * nr.kinetic_y;
  e.potential = -lp_norm_pow(u, 2.0 + p.alpha) / (2.0 + p.alpha);
  e.total = e.kinetic_x + e.kinetic_y + e.potential;
  return e;
}

Field energy_gradient(const Field& u, const Params& p) {
  SpectrumView s = transform_forward(u);
  const std::vector<double> w = laplacian_weights(u.spec, p.lambda);
  kernels::multiply_real(s.modes.data(), w.data(), s.modes.size());
  Field grad = transform_backward(s);  // (-Delta_x - lambda Delta_y) u
  const Field nl = nonlinear_term(u, p.alpha);
  kernels::axpby(1.0, grad.values.data(), -1.0, nl.values.data(),
                 grad.values.data(), grad.size());
  return grad;
}

double lagrange_multiplier(const Field& u, const Params& p) {
  NormReport nr = norms(u);
  if (!(nr.mass_sq > 0.0))
    throw ValidationError("lagrange_multiplier of the zero field");
  const double pot = lp_norm_pow(u, 2.0 + p.alpha);
  return (pot - nr.kinetic_x - p.lambda * nr.kinetic_y) / nr.mass_sq;
}

double el_residual(const Field& u, const Params& p, double omega) {
  Field g = energy_gradient(u, p);
  kernels::axpby(1.0, g.values.data(), omega, u.values.data(), g.values.data(),
                 g.size());
  return std::sqrt(mass_sq(g));
}

double h1_norm(const Field& u) {
  NormReport nr = norms(u);
  return std::sqrt(nr.mass_sq + nr.kinetic_x + nr.kinetic_y);
}

double gn_quotient(const Field& u, const Params& p) {
  NormReport nr = norms(u);
  if (!(nr.mass_sq > 0.0)) throw ValidationError("gn_quotient of the zero field");
  const double num = lp_norm_pow(u, 2.0 + p.alpha);
  const double h1 = std::sqrt(nr.mass_sq + nr.kinetic_x + nr.kinetic_y);
  const double l2 = std::sqrt(nr.mass_sq);
  const double th = p.theta();
  return num / (std::pow(h1, th) * std::pow(l2, 2.0 + p.alpha - th));
}

LocalizedGnReport localized_gn_report(const Field& u) {
  const GridSpec& g = u.spec;
  const double nk = static_cast<double>(2);  // n + k with n = k = 1
  LocalizedGnReport r;
  r.lhs = lp_norm(u, 2.0 + 4.0 / nk);
  r.h1 = h1_norm(u);
  if (!(r.h1 > 0.0))
    throw ValidationError("localized_gn_report of the zero field");

  // unit x-cells as grid-aligned windows; prefix sums make every start cheap
  const std::size_t w =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / g.hx())));
  std::vector<double> col(g.Nx);
  for (std::size_t i = 0; i < g.Nx; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.Ny; ++j) acc += std::norm(u.at(i, j));
    col[i] = acc;
  }
  double window = 0.0;
  for (std::size_t i = 0; i < std::min(w, g.Nx); ++i) window += col[i];
  double best = window;
  for (std::size_t start = 1; start < g.Nx; ++start) {
    window -= col[start - 1];
    window += col[(start + w - 1) % g.Nx];
    best = std::max(best, window);
  }
  r.sup_cell_mass = std::sqrt(best * g.cell_volume());
  r.quotient = r.lhs / (std::pow(r.sup_cell_mass, 2.0 / (nk + 2.0)) *
                        std::pow(r.h1, nk / (nk + 2.0)));
  return r;
}

}  // namespace nlsprod
