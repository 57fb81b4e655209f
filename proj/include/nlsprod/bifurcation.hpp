// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nlsprod/minimize.hpp"

namespace nlsprod {

enum class Branch { rigid, broken };

/// rigid iff y_variation < threshold; rejects non-converged minimizers.
Branch classify(const MinimizeResult& r, double threshold = 1e-4);

struct ProbeRecord {
  double parameter = 0.0;  // rho or lambda
  double y_variation = 0.0;
  double value = 0.0;  // K(rho) or J(lambda)
  double omega = 0.0;
  bool converged = false;
  Branch branch = Branch::rigid;
};

struct BifurcationResult {
  double bracket_lo = 0.0;  // largest parameter classified on the lo side
  double bracket_hi = 0.0;  // smallest parameter classified on the hi side
  std::vector<ProbeRecord> probes;
  double threshold = 1e-4;
};

// Bisection for the critical mass: minimizers are rigid below bracket_lo and
// y-dependent above bracket_hi. Probes warm-start from the previous
// minimizer times (1 + 1e-3 cos(2 pi y/ell)) so the flow can leave the rigid
// branch when it has become a saddle. The probe log is kept in full; any
// non-convergent probe halts the search.
BifurcationResult find_rho_star(double rho_lo, double rho_hi,
                                double bisection_tol, double alpha,
                                const MinimizeConfig& config,
                                double threshold = 1e-4);

// Same bisection on the coupling lambda at unit mass; on the lambda axis the
// rigid side is large lambda. When rho_bracket is supplied the result is
// checked for overlap with that bracket mapped through
// lambda = rho^{-4 alpha/(4 - alpha n)}; a miss raises NumericalError since
// the two problems are images of each other under rescaling.
BifurcationResult find_lambda_star(
    double lambda_lo, double lambda_hi, double bisection_tol, double alpha,
    const MinimizeConfig& config, double threshold = 1e-4,
    std::optional<std::pair<double, double>> rho_bracket = std::nullopt);

struct TrialBoundReport {
  double epsilon = 0.0;
  double mass = 0.0;        // grid mass of the trial field (should be ~1)
  double x_part = 0.0;      // x-kinetic + potential part of the energy
  double y_kinetic = 0.0;   // (1/2) integral |grad_y psi|^2
  double vol_I_bound = 0.0; // vol * I(1/sqrt(vol))
  double gap = 0.0;         // vol_I_bound - x_part, strict positivity expected
  double lambda_cross = 0.0;  // E_lambda(psi) = bound at this coupling
  std::vector<std::pair<double, double>> energy_sweep;  // (lambda, E_lambda)
};

// Upper-bound trial field psi(x, y) = r(y)^{4/(4-an)} Q(r(y)^{2a/(4-an)} x)
// with r(y) = c (1 + eps cos(2 pi y/ell)) normalized to integral r^2 = 1 and
// Q the unit-mass 1D ground state. Its x-part energy sits strictly below the
// trivially extended ground level whenever eps > 0, which forces a positive
// crossing coupling.
TrialBoundReport trial_upper_bound(double epsilon, double alpha,
                                   const Params& params, const GridSpec& grid,
                                   std::span<const double> lambdas = {});

}  // namespace nlsprod
