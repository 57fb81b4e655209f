// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nlsprod/grid.hpp"
#include "nlsprod/minimize.hpp"

namespace nlsprod {

struct EvolveConfig {
  double dt = 1e-3;
  double T = 1.0;
  int snapshot_every = 100;  // steps between stored snapshots
  bool store_fields = true;  // keep snapshot fields in the trajectory
};

// Time evolution of i u_t = Delta u + |u|^alpha u by Strang splitting:
// half kinetic substep (mode m picks up e^{+i|kappa|^2 dt/2}), full
// nonlinear substep u <- e^{-i |u|^alpha dt} u, half kinetic substep.
// Both substeps preserve |u| mode-wise/pointwise, so the mass is conserved
// to rounding; the energy drifts at O(dt^2).
struct Trajectory {
  EvolveConfig config;
  double alpha = 1.0;
  std::vector<double> times;         // per step, includes t = 0
  std::vector<double> mass_series;   // integral |u|^2 per step
  std::vector<double> energy_series; // conserved energy per step
  std::vector<std::pair<double, Field>> snapshots;
  bool aborted = false;  // NaN detected; series end at the last good state
};

using SnapshotCallback = std::function<void(double, const Field&)>;

Trajectory split_step(const Field& u0, double alpha, const EvolveConfig& config,
                      const SnapshotCallback& on_snapshot = {});

/// inf over grid shifts tau and phases theta of ||u - e^{i theta} u_g(.+tau, .)||_H1.
/// The optimal theta per shift is analytic; all shifts are scanned at once
/// through a 1D transform of the H1 cross-correlation.
double orbit_distance(const Field& u, const Field& u_g);

struct StabilityReport {
  double delta_requested = 0.0;
  double delta = 0.0;  // measured ||u0 - u_g||_H1 after renormalization
  double stability_factor = 5.0;
  std::vector<double> times;
  std::vector<double> distance_series;
  double max_distance = 0.0;
  bool bounded = false;  // max_distance <= stability_factor * delta_requested
  double ground_omega = 0.0;
  double ground_value = 0.0;
};

/// Perturb the mass-rho ground state by delta times a band-limited,
/// H1-normalized noise field (L2-orthogonal to the ground state), evolve,
/// and track the orbit distance at snapshot times.
StabilityReport stability_experiment(double rho, double delta, double alpha,
                                     const EvolveConfig& evolve_config,
                                     const MinimizeConfig& minimize_config,
                                     double stability_factor = 5.0,
                                     std::uint64_t seed = 7);

struct StrichartzReport {
  double p = 0.0;  // 4(2+alpha)/(n alpha)
  double q = 0.0;  // 2+alpha
  double X_T = 0.0;  // ||u||_{L^p_t L^q_x H^1_y}
  double Y_T = 0.0;  // ||grad_x u||_{L^p_t L^q_x L^2_y}
};

/// Mixed space-time norms over (-T, T) from the stored snapshots, evaluated
/// inner-to-outer (y, x, t). The time integral uses the composite trapezoid
/// rule on [0, T] doubled by the time-reflection convention u(-t) = conj(u(t))
/// (exact for real initial data). Needs at least 2 stored snapshots.
StrichartzReport strichartz_norms(const Trajectory& traj, double alpha, int n);

}  // namespace nlsprod
