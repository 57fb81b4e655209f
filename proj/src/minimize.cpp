// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/minimize.hpp"

#include <cmath>

#include "nlsprod/kernels.hpp"
#include "nlsprod/fft.hpp"
#include "nlsprod/profiles.hpp"

namespace nlsprod {

namespace {

double abs_pow(double mag, double alpha) {
  if (alpha == 1.0) return mag;
  if (alpha == 2.0) return mag * mag;
  return std::pow(mag, alpha);
}

/// nl = |u|^alpha u; returns sum |u|^{2+alpha} (unscaled by cell volume)
double nonlinear_and_potential(const Field& u, double alpha, Field& nl) {
  double pot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double mag = std::abs(u.values[i]);
    const double m_a = abs_pow(mag, alpha);
    nl.values[i] = m_a * u.values[i];
    pot += m_a * mag * mag;
  }
  return pot;
}

}  // namespace

Field make_initial_field(double target_mass, const Params& params,
                         const MinimizeConfig& config) {
  const GridSpec& g = config.grid;
  Field u;
  switch (config.init) {
    case InitKind::y_constant_soliton:
    case InitKind::perturbed_soliton: {
      const double rho_1d = target_mass / std::sqrt(g.vol());
      const SolitonProfile p =
          soliton_1d(omega_of_mass(rho_1d, params.alpha), params.alpha);
      u = sample_profile(p, g);
      if (config.init == InitKind::perturbed_soliton) {
        if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0))
          throw ValidationError("perturbed_soliton: epsilon must be in [0, 1]");
        for (std::size_t i = 0; i < g.Nx; ++i)
          for (std::size_t j = 0; j < g.Ny; ++j)
            u.at(i, j) *= 1.0 + config.epsilon *
                                    std::cos(2.0 * std::numbers::pi * g.y(j) / g.ell);
      }
      break;
    }
    case InitKind::random:
      u = random_band_limited(g, 8, config.seed);
      break;
    case InitKind::supplied:
      if (!config.supplied)
        throw ValidationError("init = supplied but no field was supplied");
      if (!(config.supplied->spec == g))
        throw ValidationError("supplied initial field lives on the wrong grid");
      u = *config.supplied;
      break;
  }
  const double m = std::sqrt(mass_sq(u));
  if (!(m > 0.0)) throw ValidationError("initial field has zero mass");
  kernels::scale(u.values.data(), target_mass / m, u.size());
  return u;
}

Field normalize_orbit(const Field& u) {
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < u.spec.Nx; ++i)
    for (std::size_t j = 0; j < u.spec.Ny; ++j) {
      const double m = std::abs(u.at(i, j));
      if (m > best) {
        best = m;
        bi = i;
        bj = j;
      }
    }
  if (best <= 0.0) return u;
  Field out = shift_phase(u, u.spec.x(bi), 0.0);
  const cplx peak = out.at(u.spec.Nx / 2, bj);
  if (std::abs(peak) > 0.0) {
    const cplx rot = std::conj(peak) / std::abs(peak);
    Field rotated = out;
    for (cplx& v : rotated.values) v *= rot;
    return rotated;
  }
  return out;
}

MinimizeResult normalized_gradient_flow(double target_mass, const Params& params,
                                        const MinimizeConfig& config) {
  if (!(target_mass > 0.0))
    throw ValidationError("normalized_gradient_flow: target mass must be positive");
  if (!(config.tau > 0.0) || !(config.tol > 0.0) || config.max_iter < 1)
    throw ValidationError("normalized_gradient_flow: bad flow configuration");

  const GridSpec& g = config.grid;
  const double rho = target_mass;
  const double dv = g.domain_volume();
  const double cell = g.cell_volume();
  const std::size_t n = g.num_points();
  Fft2d& fft = fft2d_for(g.Nx, g.Ny);

  const std::vector<double> w = laplacian_weights(g, params.lambda);
  std::vector<double> wx(n), wy(n);
  for (std::size_t i = 0; i < g.Nx; ++i) {
    const double xi2 = g.xi(i) * g.xi(i);
    for (std::size_t j = 0; j < g.Ny; ++j) {
      const double mu = g.mu(j);
      wx[i * g.Ny + j] = xi2;
      wy[i * g.Ny + j] = mu * mu;
    }
  }

  Field u = make_initial_field(rho, params, config);
  std::vector<cplx> modes(n), scratch(n);
  fft.forward(u.values.data(), modes.data());
  // keep (u, modes) a consistent pair with mass exactly rho
  {
    const double m2 = dv * kernels::sum_abs2(modes.data(), n);
    kernels::scale(modes.data(), rho / std::sqrt(m2), n);
    fft.backward(modes.data(), u.values.data());
  }

  Field nl(g), resid(g);
  auto diagnostics = [&](double& energy_out, double& omega_out,
                         double& res_out, double& yvar_out) {
    const double pot_sum = nonlinear_and_potential(u, params.alpha, nl);
    const double pot = cell * pot_sum;  // integral |u|^{2+alpha}
    const double kinx = dv * kernels::sum_abs2_weighted(modes.data(), wx.data(), n);
    const double kiny = dv * kernels::sum_abs2_weighted(modes.data(), wy.data(), n);
    energy_out = 0.5 * kinx + 0.5 * params.lambda * kiny - pot / (2.0 + params.alpha);
    omega_out = (pot - kinx - params.lambda * kiny) / (rho * rho);
    // residual = (-Dx - lambda Dy) u - nl + omega u
    scratch = modes;
    kernels::multiply_real(scratch.data(), w.data(), n);
    fft.backward(scratch.data(), resid.values.data());
    kernels::axpby(1.0, resid.values.data(), -1.0, nl.values.data(),
                   resid.values.data(), n);
    kernels::axpby(1.0, resid.values.data(), omega_out, u.values.data(),
                   resid.values.data(), n);
    res_out = std::sqrt(cell * kernels::sum_abs2(resid.values.data(), n));
    yvar_out = std::sqrt(kiny) / rho;
  };

  MinimizeResult result;
  result.target_mass = rho;

  double energy0, omega0, res0, yvar0;
  diagnostics(energy0, omega0, res0, yvar0);
  result.initial_energy = energy0;

  Field best_u = u;
  double best_energy = energy0, best_omega = omega0, best_res = res0,
         best_yvar = yvar0;
  double prev_energy = energy0;
  bool converged = res0 <= config.tol;
  bool descent_violated = false;
  int iter = 0;

  if (config.trace) config.trace(0, energy0, res0, yvar0);

  double omega_cur = omega0;
  std::vector<double> w_shifted(n);
  while (!converged && iter < config.max_iter) {
    ++iter;
    if (config.precondition) {
      // Shifted semi-implicit solve
      //   (I + tau(K + s))^{-1} ((1 - tau(omega - s)) u + tau nl),
      // K = -Dx - lambda Dy, s = max(omega, 0). Any constrained critical
      // point is an exact fixed point regardless of tau, and the shift keeps
      // the diagonal solve positive when omega is large.
      const double shift = std::max(omega_cur, 0.0);
      kernels::axpby(1.0 - config.tau * (omega_cur - shift), u.values.data(),
                     config.tau, nl.values.data(), resid.values.data(), n);
      fft.forward(resid.values.data(), modes.data());
      for (std::size_t i = 0; i < n; ++i) w_shifted[i] = w[i] + shift;
      kernels::solve_shifted(modes.data(), w_shifted.data(), config.tau, n);
    } else {
      // explicit step u - tau grad E(u)
      scratch = modes;
      kernels::multiply_real(scratch.data(), w.data(), n);
      fft.backward(scratch.data(), resid.values.data());  // (-Dx-lDy) u
      kernels::axpby(1.0, resid.values.data(), -1.0, nl.values.data(),
                     resid.values.data(), n);             // grad E
      kernels::axpby(1.0, u.values.data(), -config.tau, resid.values.data(),
                     resid.values.data(), n);
      fft.forward(resid.values.data(), modes.data());
    }
    const double m2 = dv * kernels::sum_abs2(modes.data(), n);
    if (!std::isfinite(m2) || m2 <= 0.0)
      throw NumericalError(
          "normalized_gradient_flow: iterate left the mass sphere (NaN); "
          "retry with a smaller tau");
    kernels::scale(modes.data(), rho / std::sqrt(m2), n);
    fft.backward(modes.data(), u.values.data());

    double energy, omega, res, yvar;
    diagnostics(energy, omega, res, yvar);
    if (!std::isfinite(energy) || !std::isfinite(res))
      throw NumericalError(
          "normalized_gradient_flow: diverged (NaN diagnostics); "
          "retry with a smaller tau");
    omega_cur = omega;
    if (config.trace) config.trace(iter, energy, res, yvar);

    if (energy > prev_energy + 1e-12 * (1.0 + std::abs(prev_energy)))
      descent_violated = true;
    prev_energy = energy;

    if (energy < best_energy) {
      best_energy = energy;
      best_u = u;
      best_omega = omega;
      best_res = res;
      best_yvar = yvar;
    }
    converged = res <= config.tol;
    if (converged) {
      // the converged iterate wins even if an earlier one had equal energy
      best_energy = energy;
      best_u = u;
      best_omega = omega;
      best_res = res;
      best_yvar = yvar;
    }
  }

  result.u = normalize_orbit(best_u);
  result.value = best_energy;
  result.omega = best_omega;
  result.iterations = iter;
  result.residual = best_res;
  result.y_variation = best_yvar;
  result.converged = converged;
  result.descent_violated = descent_violated;
  result.boundary_tail = boundary_tail_ratio(result.u);
  return result;
}

MinimizeResult minimize_K(double rho, double alpha, const MinimizeConfig& config,
                          double tol_upper) {
  const Params params(1, 1, alpha, 1.0);
  MinimizeResult r = normalized_gradient_flow(rho, params, config);
  const double vol = config.grid.vol();
  const double bound = vol * ground_energy_1d(rho / std::sqrt(vol), alpha);
  r.trivial_upper_bound = bound;
  if (r.converged && r.value > bound + tol_upper)
    throw NumericalError(
        "minimize_K: converged value exceeds the trivial-extension upper bound");
  return r;
}

double rho_to_lambda(double rho, double alpha, int n) {
  if (!(rho > 0.0)) throw ValidationError("rho_to_lambda: rho must be positive");
  const double an = alpha * static_cast<double>(n);
  if (!(an < 4.0) || !(alpha > 0.0))
    throw ValidationError("rho_to_lambda: need 0 < alpha and alpha*n < 4");
  return std::pow(rho, -4.0 * alpha / (4.0 - an));
}

namespace {

Field rescale_box(const Field& in, double value_factor, double box_factor) {
  GridSpec spec(in.spec.n, in.spec.L * box_factor, in.spec.Nx, in.spec.ell,
                in.spec.Ny);
  Field out(spec);
  out.values = in.values;
  kernels::scale(out.values.data(), value_factor, out.size());
  return out;
}

}  // namespace

Field map_minimizer(const Field& u_rho, double rho, double alpha, int n) {
  if (!(rho > 0.0)) throw ValidationError("map_minimizer: rho must be positive");
  const double an = alpha * static_cast<double>(n);
  if (!(an < 4.0)) throw ValidationError("map_minimizer: alpha*n must be < 4");
  const double m = std::sqrt(mass_sq(u_rho));
  if (std::abs(m - rho) > 1e-6 * rho)
    throw ValidationError("map_minimizer: field mass does not match rho");
  return rescale_box(u_rho, std::pow(rho, -4.0 / (4.0 - an)),
                     std::pow(rho, 2.0 * alpha / (4.0 - an)));
}

Field map_minimizer_inverse(const Field& u_unit, double rho, double alpha,
                            int n) {
  if (!(rho > 0.0)) throw ValidationError("map_minimizer_inverse: rho must be positive");
  const double an = alpha * static_cast<double>(n);
  if (!(an < 4.0)) throw ValidationError("map_minimizer_inverse: alpha*n must be < 4");
  const double m = std::sqrt(mass_sq(u_unit));
  if (std::abs(m - 1.0) > 1e-6)
    throw ValidationError("map_minimizer_inverse: field mass is not 1");
  return rescale_box(u_unit, std::pow(rho, 4.0 / (4.0 - an)),
                     std::pow(rho, -2.0 * alpha / (4.0 - an)));
}

SubadditivityRecord subadditivity_probe(double rho1, double rho2, double alpha,
                                        const MinimizeConfig& config) {
  if (!(rho1 > 0.0 && rho1 < rho2))
    throw ValidationError("subadditivity_probe: need 0 < rho1 < rho2");
  SubadditivityRecord rec;
  rec.rho1 = rho1;
  rec.rho2 = rho2;
  MinimizeResult r1 = minimize_K(rho1, alpha, config);
  MinimizeResult r2 = minimize_K(rho2, alpha, config);
  if (!r1.converged || !r2.converged)
    throw NumericalError("subadditivity_probe: minimization did not converge");
  rec.k1 = r1.value;
  rec.k2 = r2.value;
  rec.lhs = rec.k1 / (rho1 * rho1);
  rec.rhs = rec.k2 / (rho2 * rho2);
  rec.margin = rec.lhs - rec.rhs;
  rec.holds = rec.margin > 0.0;
  return rec;
}

}  // namespace nlsprod
