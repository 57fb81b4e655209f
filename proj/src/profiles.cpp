// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/profiles.hpp"

#include <cmath>

#include "nlsprod/quadrature.hpp"

namespace nlsprod {

namespace {

double sech(double t) { return 1.0 / std::cosh(t); }

/// integral over [0, 50/B] of g(x) doubled by evenness. Split into panels at
/// multiples of the decay length 1/B so the adaptive rule cannot mistake a
/// profile localized at x = O(1/B) for zero.
double profile_integral(const SolitonProfile& p,
                        const std::function<double(double)>& g) {
  static const double knots[] = {0.0, 1.0, 2.0, 3.0, 5.0, 8.0,
                                 13.0, 21.0, 34.0, 50.0};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(knots); ++i)
    acc += integrate(g, knots[i] / p.B, knots[i + 1] / p.B, 1e-13);
  return 2.0 * acc;
}

}  // namespace

double SolitonProfile::value(double x) const {
  return A * std::pow(sech(B * x), 2.0 / alpha);
}

double SolitonProfile::dvalue(double x) const {
  const double p = 2.0 / alpha;
  return -A * p * B * std::pow(sech(B * x), p) * std::tanh(B * x);
}

double SolitonProfile::d2value(double x) const {
  const double p = 2.0 / alpha;
  const double s = sech(B * x);
  return A * B * B * p *
         (p * std::pow(s, p) - (p + 1.0) * std::pow(s, p + 2.0));
}

SolitonProfile soliton_1d(double omega, double alpha) {
  if (!(omega > 0.0)) throw ValidationError("soliton_1d: omega must be positive");
  if (!(alpha > 0.0 && alpha < 4.0))
    throw ValidationError("soliton_1d: alpha must lie in (0, 4) for n = 1");
  SolitonProfile p;
  p.alpha = alpha;
  p.omega = omega;
  p.A = std::pow((alpha + 2.0) * omega / 2.0, 1.0 / alpha);
  p.B = alpha * std::sqrt(omega) / 2.0;
  p.n = 1;
  return p;
}

double soliton_mass(const SolitonProfile& p) {
  const double m2 = profile_integral(p, [&](double x) {
    const double u = p.value(x);
    return u * u;
  });
  return std::sqrt(m2);
}

double omega_of_mass(double rho, double alpha) {
  if (!(rho > 0.0)) throw ValidationError("omega_of_mass: rho must be positive");
  // rho(omega) follows a pure power law in 1D, which gives a sharp initial
  // bracket; bisection then certifies the inverse against quadrature.
  const double rho1 = soliton_mass(soliton_1d(1.0, alpha));
  const double exponent = 4.0 * alpha / (4.0 - alpha);  // omega ~ rho^e, n = 1
  const double guess = std::pow(rho / rho1, exponent);
  double lo = guess * 0.5, hi = guess * 2.0;
  while (soliton_mass(soliton_1d(lo, alpha)) > rho) lo *= 0.5;
  while (soliton_mass(soliton_1d(hi, alpha)) < rho) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = soliton_mass(soliton_1d(mid, alpha));
    if (std::abs(m - rho) < 1e-10 * rho) return mid;
    (m < rho ? lo : hi) = mid;
  }
  throw NumericalError("omega_of_mass: bisection failed to reach tolerance");
}

PohozaevReport pohozaev_report(const SolitonProfile& p) {
  if (p.n != 1)
    throw ValidationError("pohozaev_report: closed form only built for n = 1");
  PohozaevReport r;
  r.mass_sq = profile_integral(p, [&](double x) {
    const double u = p.value(x);
    return u * u;
  });
  r.kinetic = profile_integral(p, [&](double x) {
    const double du = p.dvalue(x);
    return du * du;
  });
  r.potential_int = profile_integral(
      p, [&](double x) { return std::pow(p.value(x), 2.0 + p.alpha); });
  const double a = p.alpha;
  const double n = static_cast<double>(p.n);
  r.residual_poza = r.kinetic - a * n / (2.0 * (a + 2.0)) * r.potential_int;
  r.residual_pozae =
      p.omega * r.mass_sq - (2.0 * a + 4.0 - a * n) / (a * n) * r.kinetic;
  r.ground_energy = (a * n - 4.0) / (2.0 * a * n) * r.kinetic;
  return r;
}

double ground_energy_1d(double rho, double alpha) {
  const SolitonProfile p = soliton_1d(omega_of_mass(rho, alpha), alpha);
  return pohozaev_report(p).ground_energy;
}

double scaling_exponent(double alpha, int n) {
  const double an = alpha * static_cast<double>(n);
  if (!(an < 4.0)) throw ValidationError("scaling_exponent: alpha*n must be < 4");
  return (8.0 + 4.0 * alpha - 2.0 * an) / (4.0 - an);
}

double scaling_check(double alpha, double rho1, double rho2) {
  if (!(rho1 > 0.0 && rho2 > 0.0))
    throw ValidationError("scaling_check: masses must be positive");
  const double i1 = ground_energy_1d(rho1, alpha);
  const double i2 = ground_energy_1d(rho2, alpha);
  return std::abs(i2 / i1 - std::pow(rho2 / rho1, scaling_exponent(alpha, 1)));
}

MassCurve sample_mass_curve(double alpha, double omega_lo, double omega_hi,
                            std::size_t count) {
  if (!(omega_lo > 0.0 && omega_hi > omega_lo))
    throw ValidationError("sample_mass_curve: need 0 < omega_lo < omega_hi");
  if (count < 2) throw ValidationError("sample_mass_curve: need >= 2 samples");
  MassCurve curve;
  curve.alpha = alpha;
  const double log_lo = std::log(omega_lo);
  const double step = (std::log(omega_hi) - log_lo) /
                      static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = std::exp(log_lo + step * static_cast<double>(i));
    curve.samples.emplace_back(w, soliton_mass(soliton_1d(w, alpha)));
  }
  return curve;
}

double ode_residual_sup(const SolitonProfile& p,
                        const std::vector<double>& xs) {
  // fourth-order central second derivative; h balances truncation against
  // cancellation for the amplitudes in play
  const double h = 1e-3 / p.B;
  double sup = 0.0;
  for (double x : xs) {
    const double u = p.value(x);
    const double d2 = (-p.value(x - 2 * h) + 16.0 * p.value(x - h) -
                       30.0 * u + 16.0 * p.value(x + h) - p.value(x + 2 * h)) /
                      (12.0 * h * h);
    const double res = -d2 + p.omega * u - std::pow(u, 1.0 + p.alpha);
    sup = std::max(sup, std::abs(res));
  }
  return sup;
}

Field sample_profile(const SolitonProfile& p, const GridSpec& spec) {
  Field u(spec);
  for (std::size_t i = 0; i < spec.Nx; ++i) {
    const cplx v = p.value(spec.x(i));
    for (std::size_t j = 0; j < spec.Ny; ++j) u.at(i, j) = v;
  }
  return u;
}

}  // namespace nlsprod
