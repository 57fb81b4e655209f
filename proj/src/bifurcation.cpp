// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/bifurcation.hpp"

#include <algorithm>
#include <cmath>

#include "nlsprod/kernels.hpp"
#include "nlsprod/profiles.hpp"

namespace nlsprod {

Branch classify(const MinimizeResult& r, double threshold) {
  if (!r.converged)
    throw ValidationError("classify: refusing a non-converged minimizer");
  return r.y_variation < threshold ? Branch::rigid : Branch::broken;
}

namespace {

constexpr double kWarmPerturbation = 1e-3;

/// warm-start field: seed times (1 + 1e-3 cos(2 pi y / ell)); the pure rigid
/// state is a critical point of the flow, so the probe needs a nudge off it
Field perturbed_seed(const Field& seed) {
  Field out = seed;
  const GridSpec& g = seed.spec;
  for (std::size_t i = 0; i < g.Nx; ++i)
    for (std::size_t j = 0; j < g.Ny; ++j)
      out.at(i, j) *=
          1.0 + kWarmPerturbation *
                    std::cos(2.0 * std::numbers::pi * g.y(j) / g.ell);
  return out;
}

struct Prober {
  double alpha;
  const MinimizeConfig& base;
  double threshold;
  bool lambda_problem;  // probe parameter is lambda at unit mass
  std::vector<ProbeRecord>* log;
  Field last_minimizer;
  bool have_last = false;

  ProbeRecord run(double parameter) {
    MinimizeConfig cfg = base;
    const double mass = lambda_problem ? 1.0 : parameter;
    Field seed = have_last ? last_minimizer
                           : make_initial_field(mass, Params(1, 1, alpha, 1.0),
                                                cfg);
    cfg.init = InitKind::supplied;
    cfg.supplied = perturbed_seed(seed);

    const double lambda = lambda_problem ? parameter : 1.0;
    MinimizeResult r =
        normalized_gradient_flow(mass, Params(1, 1, alpha, lambda), cfg);

    ProbeRecord rec;
    rec.parameter = parameter;
    rec.y_variation = r.y_variation;
    rec.value = r.value;
    rec.omega = r.omega;
    rec.converged = r.converged;
    if (r.converged) {
      rec.branch = classify(r, threshold);
      last_minimizer = r.u;
      have_last = true;
    }
    log->push_back(rec);
    if (!r.converged)
      throw NumericalError("critical-parameter probe did not converge at " +
                           std::to_string(parameter));
    return rec;
  }
};

void check_probe_order(const std::vector<ProbeRecord>& probes,
                       Branch lo_side) {
  // no probe on the lo-side branch may sit above one on the hi-side branch
  for (const ProbeRecord& a : probes)
    for (const ProbeRecord& b : probes)
      if (a.branch == lo_side && b.branch != lo_side &&
          a.parameter > b.parameter)
        throw NumericalError(
            "bisection produced a non-monotone classification log");
}

BifurcationResult bisect(double lo, double hi, double tol, double alpha,
                         const MinimizeConfig& config, double threshold,
                         bool lambda_problem) {
  if (!(lo > 0.0) || !(hi > lo))
    throw ValidationError("critical-parameter search: need 0 < lo < hi");
  if (!(tol > 0.0))
    throw ValidationError("critical-parameter search: tolerance must be positive");

  BifurcationResult result;
  result.threshold = threshold;
  Prober prober{alpha, config, threshold, lambda_problem, &result.probes};

  // on the mass axis the rigid branch sits below the critical point; on the
  // coupling axis it sits above
  const Branch lo_branch = lambda_problem ? Branch::broken : Branch::rigid;
  const Branch hi_branch = lambda_problem ? Branch::rigid : Branch::broken;

  ProbeRecord plo = prober.run(lo);
  if (plo.branch != lo_branch)
    throw ValidationError(
        "invalid initial bracket: low probe is on the wrong branch");
  ProbeRecord phi = prober.run(hi);
  if (phi.branch != hi_branch)
    throw ValidationError(
        "invalid initial bracket: high probe is on the wrong branch");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ProbeRecord pm = prober.run(mid);
    if (pm.branch == lo_branch)
      lo = mid;
    else
      hi = mid;
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  check_probe_order(result.probes, lo_branch);
  return result;
}

}  // namespace

BifurcationResult find_rho_star(double rho_lo, double rho_hi,
                                double bisection_tol, double alpha,
                                const MinimizeConfig& config, double threshold) {
  return bisect(rho_lo, rho_hi, bisection_tol, alpha, config, threshold,
                /*lambda_problem=*/false);
}

BifurcationResult find_lambda_star(
    double lambda_lo, double lambda_hi, double bisection_tol, double alpha,
    const MinimizeConfig& config, double threshold,
    std::optional<std::pair<double, double>> rho_bracket) {
  BifurcationResult result = bisect(lambda_lo, lambda_hi, bisection_tol, alpha,
                                    config, threshold, /*lambda_problem=*/true);
  if (rho_bracket) {
    const auto [rlo, rhi] = *rho_bracket;
    // rho -> lambda is decreasing, so the mapped bracket swaps ends
    const double mlo = rho_to_lambda(rhi, alpha, 1);
    const double mhi = rho_to_lambda(rlo, alpha, 1);
    const bool overlap = std::max(mlo, result.bracket_lo) <=
                         std::min(mhi, result.bracket_hi);
    if (!overlap)
      throw NumericalError(
          "lambda* bracket does not overlap the mapped rho* bracket; the two "
          "constrained problems disagree");
  }
  return result;
}

TrialBoundReport trial_upper_bound(double epsilon, double alpha,
                                   const Params& params, const GridSpec& grid,
                                   std::span<const double> lambdas) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("trial_upper_bound: epsilon must lie in (0, 1)");
  const double an = alpha * static_cast<double>(params.n);
  const double vol = grid.vol();

  // r(y) = c (1 + eps cos(2 pi y/ell)) with integral r^2 dvol = 1
  const double c = 1.0 / std::sqrt(vol * (1.0 + 0.5 * epsilon * epsilon));
  const SolitonProfile q = soliton_1d(omega_of_mass(1.0, alpha), alpha);

  Field psi(grid);
  for (std::size_t j = 0; j < grid.Ny; ++j) {
    const double r =
        c * (1.0 + epsilon *
                       std::cos(2.0 * std::numbers::pi * grid.y(j) / grid.ell));
    const double amp = std::pow(r, 4.0 / (4.0 - an));
    const double squeeze = std::pow(r, 2.0 * alpha / (4.0 - an));
    for (std::size_t i = 0; i < grid.Nx; ++i)
      psi.at(i, j) = amp * q.value(squeeze * grid.x(i));
  }

  const Params iso(params.n, params.k, alpha, 1.0);
  const EnergyBreakdown e = energy(psi, iso);

  TrialBoundReport report;
  report.epsilon = epsilon;
  report.mass = std::sqrt(mass_sq(psi));
  report.x_part = e.kinetic_x + e.potential;
  report.y_kinetic = e.kinetic_y;  // lambda = 1, so this is (1/2)|grad_y psi|^2
  report.vol_I_bound = vol * ground_energy_1d(1.0 / std::sqrt(vol), alpha);
  report.gap = report.vol_I_bound - report.x_part;
  report.lambda_cross = report.gap / report.y_kinetic;
  for (double l : lambdas)
    report.energy_sweep.emplace_back(l, report.x_part + l * report.y_kinetic);
  return report;
}

}  // namespace nlsprod
