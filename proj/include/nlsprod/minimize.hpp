// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "nlsprod/energy.hpp"
#include "nlsprod/grid.hpp"

namespace nlsprod {

enum class InitKind { y_constant_soliton, perturbed_soliton, random, supplied };

struct MinimizeConfig {
  GridSpec grid;
  double tau = 0.5;
  double tol = 1e-8;      // Euler-Lagrange residual target, L2
  int max_iter = 50000;
  InitKind init = InitKind::y_constant_soliton;
  double epsilon = 0.0;   // relative amplitude for perturbed_soliton
  std::uint64_t seed = 0;
  std::optional<Field> supplied;
  bool precondition = true;
  // iter, energy, residual, y_variation
  std::function<void(int, double, double, double)> trace;
};

struct MinimizeResult {
  Field u;
  double value = 0.0;        // constrained energy at the returned iterate
  double omega = 0.0;        // extracted Lagrange multiplier
  int iterations = 0;
  double residual = 0.0;     // final ||grad E + omega u||_L2
  double y_variation = 0.0;
  bool converged = false;
  bool descent_violated = false;
  double initial_energy = 0.0;
  double boundary_tail = 0.0;
  double target_mass = 0.0;
  // set by minimize_K: trivially extended 1D ground level vol * I(rho/sqrt(vol))
  std::optional<double> trivial_upper_bound;
};

/// Minimize the constrained energy on the mass sphere ||u||_L2 = target_mass
/// by a projected descent flow. The default step solves the kinetic part
/// semi-implicitly with a multiplier shift,
///   u <- renormalize( (I + tau(K + s))^{-1} ((1 - tau(omega - s)) u
///                                            + tau |u|^a u) ),
/// K = -Dx - lambda Dy, s = max(omega, 0), diagonal in Fourier space. The
/// shift makes every constrained critical point an exact fixed point, so the
/// Euler-Lagrange residual can be driven to tolerance at fixed tau (the
/// unshifted backward-Euler step stalls at an O(tau) bias).
/// config.precondition = false selects the explicit step u - tau grad E(u)
/// for cross-validation. Returns the best (lowest-energy) iterate,
/// orbit-normalized so the density maximum sits at x = 0 with real positive
/// phase.
///
/// Non-convergence is reported through converged = false; a NaN blowup
/// raises NumericalError advising a smaller tau.
MinimizeResult normalized_gradient_flow(double target_mass, const Params& params,
                                        const MinimizeConfig& config);

/// Flow at lambda = 1 plus the trivial-extension consistency check
/// K <= vol * I(rho/sqrt(vol)) + tol_upper (violation raises NumericalError).
MinimizeResult minimize_K(double rho, double alpha, const MinimizeConfig& config,
                          double tol_upper = 1e-6);

/// lambda = rho^{-4 alpha/(4 - alpha n)}, the coupling equivalent to mass rho.
double rho_to_lambda(double rho, double alpha, int n);

/// Rescale a mass-rho field to the unit-mass problem: values scale by
/// rho^{-4/(4-alpha n)} and the box half-width by rho^{+2 alpha/(4-alpha n)},
/// so grid nodes map to grid nodes and the map is exact (no resampling).
/// Energies relate by E(u_rho) = rho^{(8-2 alpha n+4 alpha)/(4-alpha n)} *
/// E_lambda(v) with lambda = rho_to_lambda(rho).
Field map_minimizer(const Field& u_rho, double rho, double alpha, int n);

/// Inverse of map_minimizer (unit mass back to mass rho).
Field map_minimizer_inverse(const Field& u_unit, double rho, double alpha, int n);

struct SubadditivityRecord {
  double rho1 = 0.0, rho2 = 0.0;
  double k1 = 0.0, k2 = 0.0;
  double lhs = 0.0;    // rho1^{-2} K(rho1)
  double rhs = 0.0;    // rho2^{-2} K(rho2)
  double margin = 0.0; // lhs - rhs, positive when strict monotonicity holds
  bool holds = false;
};

/// Strict decrease of rho -> rho^{-2} K(rho), probed at two masses.
SubadditivityRecord subadditivity_probe(double rho1, double rho2, double alpha,
                                        const MinimizeConfig& config);

/// Initial iterate for the flow (exposed for tests and the CLI).
Field make_initial_field(double target_mass, const Params& params,
                         const MinimizeConfig& config);

/// Shift the density maximum to x = 0 and make the value there real positive.
Field normalize_orbit(const Field& u);

}  // namespace nlsprod
