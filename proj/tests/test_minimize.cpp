// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nlsprod/kernels.hpp"
#include "nlsprod/minimize.hpp"
#include "nlsprod/profiles.hpp"

using namespace nlsprod;
using std::numbers::pi;

namespace {

MinimizeConfig coarse_config() {
  MinimizeConfig cfg;
  cfg.grid = GridSpec(1, 24.0, 256, 2.0 * pi, 16);
  cfg.tol = 1e-8;
  cfg.max_iter = 20000;
  return cfg;
}

}  // namespace

TEST_CASE("exact initialization is a fixed point") {
  MinimizeConfig cfg = coarse_config();
  cfg.tol = 1e-6;
  const double rho = 2.5;
  const MinimizeResult first = minimize_K(rho, 1.0, cfg);
  REQUIRE(first.converged);
  CHECK(std::sqrt(mass_sq(first.u)) == doctest::Approx(rho).epsilon(1e-12));
  CHECK(first.value <= first.initial_energy + 1e-12);

  // feeding the converged discrete minimizer back in stops immediately
  MinimizeConfig again = cfg;
  again.init = InitKind::supplied;
  again.supplied = first.u;
  const MinimizeResult r = minimize_K(rho, 1.0, again);
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.value <= first.value + 1e-12);
}

TEST_CASE("rigid regime run matches the 1D oracles") {
  MinimizeConfig cfg = coarse_config();
  const double rho = 2.5, alpha = 1.0;
  const MinimizeResult r = minimize_K(rho, alpha, cfg);
  REQUIRE(r.converged);
  CHECK(r.residual <= cfg.tol);
  CHECK_FALSE(r.descent_violated);
  CHECK(r.y_variation < 1e-6);
  // sech^2 tail at B*L ~ 6.6 with both periodic images meeting at the seam
  CHECK(r.boundary_tail < 5e-5);

  const double vol = cfg.grid.vol();
  const double expected = vol * ground_energy_1d(rho / std::sqrt(vol), alpha);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-4));
  CHECK(r.trivial_upper_bound.has_value());
  CHECK(r.value <= *r.trivial_upper_bound + 1e-6);

  const double omega_ref = omega_of_mass(rho / std::sqrt(vol), alpha);
  CHECK(r.omega == doctest::Approx(omega_ref).epsilon(1e-3));

  CHECK(r.value < 0.0);  // the constrained level is negative at every mass
}

TEST_CASE("descent along the flow and exact mass per iterate") {
  MinimizeConfig cfg = coarse_config();
  cfg.init = InitKind::perturbed_soliton;
  cfg.epsilon = 0.4;
  std::vector<double> energies;
  cfg.trace = [&](int, double e, double, double) { energies.push_back(e); };
  const MinimizeResult r = minimize_K(2.5, 1.0, cfg);
  REQUIRE(r.converged);
  CHECK_FALSE(r.descent_violated);
  REQUIRE(energies.size() > 3);
  for (std::size_t i = 1; i < energies.size(); ++i)
    CHECK(energies[i] <= energies[i - 1] + 1e-12 * (1.0 + std::abs(energies[i - 1])));
  CHECK(std::sqrt(mass_sq(r.u)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("minimizer value does not depend on the initialization") {
  MinimizeConfig cfg = coarse_config();
  const MinimizeResult a = minimize_K(2.5, 1.0, cfg);

  MinimizeConfig rnd = cfg;
  rnd.init = InitKind::random;
  rnd.seed = 1234;
  rnd.max_iter = 50000;
  const MinimizeResult b = minimize_K(2.5, 1.0, rnd);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(std::abs(a.value - b.value) <= 2.0 * cfg.tol * (1.0 + std::abs(a.value)));
}

TEST_CASE("explicit step cross-validates the preconditioned one") {
  MinimizeConfig pre;
  pre.grid = GridSpec(1, 12.0, 64, 2.0 * pi, 8);
  pre.tol = 1e-7;
  const MinimizeResult a = minimize_K(2.5, 1.0, pre);

  MinimizeConfig exp = pre;
  exp.precondition = false;
  exp.tau = 0.008;  // explicit stability needs tau < 2/max(xi^2 + mu^2)
  exp.max_iter = 50000;
  const MinimizeResult b = minimize_K(2.5, 1.0, exp);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
  CHECK(a.omega == doctest::Approx(b.omega).epsilon(1e-4));
}

TEST_CASE("non-convergence is reported, not thrown") {
  MinimizeConfig cfg = coarse_config();
  cfg.init = InitKind::perturbed_soliton;
  cfg.epsilon = 0.5;
  cfg.max_iter = 3;
  const MinimizeResult r = normalized_gradient_flow(2.5, Params(1, 1, 1.0, 1.0), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.value <= r.initial_energy + 1e-12);
}

TEST_CASE("flow configuration validation") {
  MinimizeConfig cfg = coarse_config();
  const Params p(1, 1, 1.0, 1.0);
  CHECK_THROWS_AS(normalized_gradient_flow(-1.0, p, cfg), ValidationError);
  MinimizeConfig bad = cfg;
  bad.tau = 0.0;
  CHECK_THROWS_AS(normalized_gradient_flow(1.0, p, bad), ValidationError);
  bad = cfg;
  bad.max_iter = 0;
  CHECK_THROWS_AS(normalized_gradient_flow(1.0, p, bad), ValidationError);
  bad = cfg;
  bad.init = InitKind::supplied;
  CHECK_THROWS_AS(normalized_gradient_flow(1.0, p, bad), ValidationError);
}

TEST_CASE("mass-to-coupling map") {
  CHECK(rho_to_lambda(1.0, 1.3, 1) == doctest::Approx(1.0));
  // alpha = 1, n = 1: exponent 4/3, so rho = 8 gives 8^{-4/3} = 1/16
  CHECK(rho_to_lambda(8.0, 1.0, 1) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(rho_to_lambda(0.5, 1.0, 1) > rho_to_lambda(1.0, 1.0, 1));
  CHECK(rho_to_lambda(1.0, 1.0, 1) > rho_to_lambda(2.0, 1.0, 1));
  CHECK_THROWS_AS(rho_to_lambda(0.0, 1.0, 1), ValidationError);
}

TEST_CASE("rescaling bijection between the mass and coupling problems") {
  const GridSpec g(1, 24.0, 256, 2.0 * pi, 16);
  const double alpha = 1.0, rho = 2.0;
  const Field u = [&] {
    Field f = make_field(g, [&](double x, double y) {
      return std::exp(-0.3 * x * x) * (1.0 + 0.2 * std::cos(y));
    });
    const double m = std::sqrt(mass_sq(f));
    kernels::scale(f.values.data(), rho / m, f.size());
    return f;
  }();

  SUBCASE("unit mass comes out exactly") {
    const Field v = map_minimizer(u, rho, alpha, 1);
    CHECK(std::sqrt(mass_sq(v)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(v.spec.L == doctest::Approx(g.L * std::pow(rho, 2.0 / 3.0)));
  }
  SUBCASE("rho = 1 is the identity") {
    Field unit = u;
    kernels::scale(unit.values.data(), 1.0 / rho, unit.size());
    const double m = std::sqrt(mass_sq(unit));
    kernels::scale(unit.values.data(), 1.0 / m, unit.size());
    const Field v = map_minimizer(unit, 1.0, alpha, 1);
    CHECK(v.spec == unit.spec);
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(std::abs(v.values[i] - unit.values[i]) < 1e-14);
  }
  SUBCASE("energies relate by the rescaling factor") {
    const Field v = map_minimizer(u, rho, alpha, 1);
    const double lambda = rho_to_lambda(rho, alpha, 1);
    const EnergyBreakdown lhs = energy(u, Params(1, 1, alpha, 1.0));
    const EnergyBreakdown rhs = energy(v, Params(1, 1, alpha, lambda));
    const double factor =
        std::pow(rho, (8.0 - 2.0 * alpha + 4.0 * alpha) / (4.0 - alpha));
    CHECK(lhs.total == doctest::Approx(factor * rhs.total).epsilon(1e-6));
  }
  SUBCASE("round trip is exact") {
    const Field v = map_minimizer(u, rho, alpha, 1);
    const Field back = map_minimizer_inverse(v, rho, alpha, 1);
    CHECK(back.spec == u.spec);
    for (std::size_t i = 0; i < u.size(); ++i)
      CHECK(std::abs(back.values[i] - u.values[i]) <= 1e-8);
  }
  SUBCASE("mass mismatch rejected") {
    CHECK_THROWS_AS(map_minimizer(u, rho * 1.1, alpha, 1), ValidationError);
  }
}

TEST_CASE("strict subadditivity of the normalized level") {
  MinimizeConfig cfg = coarse_config();
  SUBCASE("probe at (1, 2)") {
    const SubadditivityRecord rec = subadditivity_probe(1.0, 2.0, 1.0, cfg);
    CHECK(rec.holds);
    CHECK(rec.margin > 0.0);
    CHECK(rec.k1 < 0.0);
    CHECK(rec.k2 < 0.0);
  }
  SUBCASE("degenerate masses rejected") {
    CHECK_THROWS_AS(subadditivity_probe(1.0, 1.0, 1.0, cfg), ValidationError);
    CHECK_THROWS_AS(subadditivity_probe(2.0, 1.0, 1.0, cfg), ValidationError);
  }
  SUBCASE("rigid-regime margin follows the closed-form scaling") {
    // rho^{-2} K = vol^{-2/3} I(1) rho^{4/3} for alpha = 1 while both
    // minimizers stay y-constant
    const double rho1 = 1.0, rho2 = 2.0;
    const SubadditivityRecord rec = subadditivity_probe(rho1, rho2, 1.0, cfg);
    const double vol = cfg.grid.vol();
    const double i1 = ground_energy_1d(1.0, 1.0);
    const double predicted = -i1 * std::pow(vol, -2.0 / 3.0) *
                             (std::pow(rho2, 4.0 / 3.0) -
                              std::pow(rho1, 4.0 / 3.0));
    CHECK(rec.margin == doctest::Approx(predicted).epsilon(1e-3));
  }
}

TEST_CASE("orbit normalization pins translation and phase") {
  const GridSpec g(1, 12.0, 128, 2.0 * pi, 8);
  const SolitonProfile p = soliton_1d(1.0, 1.0);
  Field u = make_field(g, [&](double x, double y) {
    (void)y;
    return p.value(x - 16.0 * g.hx()) * std::polar(1.0, 0.7);
  });
  const Field v = normalize_orbit(u);
  const std::size_t mid = g.Nx / 2;
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < g.Nx; ++i)
    if (std::abs(v.at(i, 0)) > best) {
      best = std::abs(v.at(i, 0));
      arg = i;
    }
  CHECK(arg == mid);
  CHECK(v.at(mid, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.at(mid, 0).real() > 0.0);
}
