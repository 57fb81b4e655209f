// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nlsprod/grid.hpp"

namespace nlsprod {

/// Problem parameters on R^n x T^k. Subcriticality 0 < alpha < 4/(n+k) is
/// enforced at construction; lambda weights the y-kinetic term (1 recovers
/// the physical functional).
struct Params {
  int n = 1;
  int k = 1;
  double alpha = 1.0;
  double lambda = 1.0;

  Params() = default;
  Params(int n_, int k_, double alpha_, double lambda_ = 1.0);

  double theta() const {
    return static_cast<double>(n + k) * alpha / 2.0;  // GN interpolation power
  }
};

struct EnergyBreakdown {
  double kinetic_x = 0.0;  // (1/2) integral |grad_x u|^2
  double kinetic_y = 0.0;  // (lambda/2) integral |grad_y u|^2
  double potential = 0.0;  // -(1/(2+alpha)) integral |u|^{2+alpha}
  double total = 0.0;
};

EnergyBreakdown energy(const Field& u, const Params& p);

/// L2 functional gradient -Delta_x u - lambda Delta_y u - |u|^alpha u, so a
/// constrained critical point satisfies gradient + omega u = 0.
Field energy_gradient(const Field& u, const Params& p);

/// Rayleigh-type multiplier estimate
///   (integral |u|^{2+alpha} - integral (|grad_x u|^2 + lambda |grad_y u|^2))
///   / integral |u|^2;
/// equals the Lagrange multiplier omega at an exact critical point.
double lagrange_multiplier(const Field& u, const Params& p);

/// ||gradient + omega u||_L2
double el_residual(const Field& u, const Params& p, double omega);

/// H1 norm under the convention ||u||_H1^2 = integral (|u|^2 + |grad u|^2)
/// (plain, lambda-free).
double h1_norm(const Field& u);

/// ||u||_{L^{2+a}}^{2+a} / (||u||_H1^theta ||u||_L2^{2+a-theta}); finite and
/// scale-invariant by homogeneity.
double gn_quotient(const Field& u, const Params& p);

struct LocalizedGnReport {
  double lhs = 0.0;            // ||u||_{L^{2+4/(n+k)}}
  double sup_cell_mass = 0.0;  // sup over unit x-cells Q of ||u||_{L2(QxT)}
  double h1 = 0.0;
  double quotient = 0.0;  // lhs / (scm^{2/(n+k+2)} h1^{(n+k)/(n+k+2)})
};

/// Localized Gagliardo-Nirenberg diagnostic at the exponent 2 + 4/(n+k).
/// Cells are grid-aligned windows of round(1/hx) samples; the sup runs over
/// every window start, which makes the report exactly shift-invariant.
LocalizedGnReport localized_gn_report(const Field& u);

/// pointwise |u|^alpha u
Field nonlinear_term(const Field& u, double alpha);

}  // namespace nlsprod
