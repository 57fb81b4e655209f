// SPDX-License-Identifier: Apache-2.0
//
// nlsprod: spectral experiments for NLS ground states on the cylinder R x T.
// Subcommands: soliton, verify, minimize, critical-mass, evolve, stability,
// report. Every run writes a schema-versioned JSON summary plus CSV series
// and binary field dumps; floating-point CSV output carries 17 significant
// digits so values round-trip.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nlsprod/bifurcation.hpp"
#include "nlsprod/energy.hpp"
#include "nlsprod/evolve.hpp"
#include "nlsprod/grid.hpp"
#include "nlsprod/minimize.hpp"
#include "nlsprod/parallel.hpp"
#include "nlsprod/profiles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlsprod;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridOption {
  std::size_t Nx = 2048;
  std::size_t Ny = 64;
  double L = 40.0;
  double ell = 2.0 * std::numbers::pi;

  GridSpec to_spec() const { return GridSpec(1, L, Nx, ell, Ny); }
};

/// "--grid Nx,Ny,L,ell"
void add_grid_option(CLI::App* cmd, GridOption& g) {
  cmd->add_option_function<std::string>(
      "--grid",
      [&g](const std::string& s) {
        unsigned long nx = 0, ny = 0;
        double L = 0, ell = 0;
        if (std::sscanf(s.c_str(), "%lu,%lu,%lf,%lf", &nx, &ny, &L, &ell) != 4)
          throw CLI::ValidationError("--grid", "expected Nx,Ny,L,ell");
        g.Nx = nx;
        g.Ny = ny;
        g.L = L;
        g.ell = ell;
      },
      "grid as Nx,Ny,L,ell (default 2048,64,40,6.2831853071795865)");
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ValidationError("out_dir is not writable: " + out);
  return dir;
}

json grid_json(const GridSpec& g) {
  return json{{"n", g.n}, {"Nx", g.Nx}, {"Ny", g.Ny}, {"L", g.L}, {"ell", g.ell}};
}

// ---------------------------------------------------------------------------
// soliton
// ---------------------------------------------------------------------------

struct SolitonArgs {
  double alpha = 1.0;
  double omega = 1.0;
  std::string out;
};

int run_soliton(const SolitonArgs& a) {
  const SolitonProfile p = soliton_1d(a.omega, a.alpha);
  const PohozaevReport rep = pohozaev_report(p);

  std::vector<double> xs;
  for (int i = -400; i <= 400; ++i) xs.push_back(20.0 / p.B * i / 400.0);

  json j;
  j["schema"] = 1;
  j["command"] = "soliton";
  j["alpha"] = a.alpha;
  j["omega"] = a.omega;
  j["A"] = p.A;
  j["B"] = p.B;
  j["rho"] = std::sqrt(rep.mass_sq);
  j["mass_sq"] = rep.mass_sq;
  j["kinetic"] = rep.kinetic;
  j["potential_int"] = rep.potential_int;
  j["energy"] = rep.ground_energy;
  j["residuals"] = {{"ode_sup", ode_residual_sup(p, xs)},
                    {"poza", rep.residual_poza},
                    {"pozae", rep.residual_pozae}};
  if (a.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(j, a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  double alpha = 1.0;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const double tol = 1e-6;
  const std::vector<double> omegas = {0.25, 1.0, 4.0};

  std::vector<json> slots(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) {
    const double omega = omegas[i];
    const SolitonProfile p = soliton_1d(omega, a.alpha);
    const PohozaevReport rep = pohozaev_report(p);
    std::vector<double> xs;
    for (int k = -400; k <= 400; ++k) xs.push_back(20.0 / p.B * k / 400.0);
    const double rho = std::sqrt(rep.mass_sq);
    json c;
    c["omega"] = omega;
    c["rho"] = rho;
    c["ode_sup"] = ode_residual_sup(p, xs);
    c["poza"] = rep.residual_poza;
    c["pozae"] = rep.residual_pozae;
    c["ground_energy"] = rep.ground_energy;
    // ground level equals (a n - 4)/(2 a n) * kinetic with n = 1
    c["energy_identity"] =
        rep.ground_energy - (a.alpha - 4.0) / (2.0 * a.alpha) * rep.kinetic;
    c["mass_round_trip"] = omega_of_mass(rho, a.alpha) / omega - 1.0;
    slots[i] = std::move(c);
  });
  json cases = json::array();
  for (json& c : slots) cases.push_back(std::move(c));

  const double scaling = scaling_check(a.alpha, 1.0, 2.0);

  bool passed = scaling < tol;
  for (const json& c : cases) {
    for (const char* key :
         {"ode_sup", "poza", "pozae", "energy_identity", "mass_round_trip"})
      passed = passed && std::abs(c[key].get<double>()) < tol;
  }

  json j;
  j["schema"] = 1;
  j["command"] = "verify";
  j["alpha"] = a.alpha;
  j["tolerance"] = tol;
  j["cases"] = cases;
  j["scaling_law_error"] = scaling;
  j["passed"] = passed;
  if (a.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(j, a.out);
  return passed ? 0 : 2;
}

// ---------------------------------------------------------------------------
// minimize
// ---------------------------------------------------------------------------

struct MinimizeArgs {
  double rho = 1.0;
  double alpha = 1.0;
  double lambda = 1.0;
  std::string init = "soliton";
  double epsilon = 0.1;
  double tol = 1e-8;
  int max_iter = 50000;
  std::uint64_t seed = 0;
  GridOption grid;
  std::string out = "minimize_run";
};

InitKind parse_init(const std::string& s) {
  if (s == "soliton") return InitKind::y_constant_soliton;
  if (s == "perturbed") return InitKind::perturbed_soliton;
  if (s == "random") return InitKind::random;
  throw ValidationError("--init must be one of soliton|perturbed|random");
}

int run_minimize(const MinimizeArgs& a) {
  const fs::path dir = prepare_out_dir(a.out);

  MinimizeConfig cfg;
  cfg.grid = a.grid.to_spec();
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.init = parse_init(a.init);
  cfg.epsilon = a.epsilon;
  cfg.seed = a.seed;

  std::ofstream csv(dir / "iterations.csv");
  csv << "iter,energy,residual,y_variation\n";
  cfg.trace = [&csv](int it, double e, double r, double yv) {
    csv << it << ',' << fmt17(e) << ',' << fmt17(r) << ',' << fmt17(yv) << "\n";
  };

  const Params params(1, 1, a.alpha, a.lambda);
  const MinimizeResult r = a.lambda == 1.0
                               ? minimize_K(a.rho, a.alpha, cfg)
                               : normalized_gradient_flow(a.rho, params, cfg);
  save_field(r.u, (dir / "field.nlsf").string());

  json j;
  j["schema"] = 1;
  j["command"] = "minimize";
  j["alpha"] = a.alpha;
  j["lambda"] = a.lambda;
  j["rho"] = a.rho;
  j["grid"] = grid_json(cfg.grid);
  j["seed"] = a.seed;
  j["init"] = a.init;
  j["tol"] = a.tol;
  j["converged"] = r.converged;
  j["value"] = r.value;
  j["omega"] = r.omega;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["y_variation"] = r.y_variation;
  j["descent_violated"] = r.descent_violated;
  j["boundary_tail"] = r.boundary_tail;
  if (r.trivial_upper_bound) {
    j["trivial_upper_bound"] = *r.trivial_upper_bound;
    j["upper_margin"] = *r.trivial_upper_bound - r.value;
  }
  write_json(j, dir / "summary.json");
  return r.converged ? 0 : 2;
}

// ---------------------------------------------------------------------------
// critical-mass
// ---------------------------------------------------------------------------

struct CriticalArgs {
  double alpha = 1.0;
  std::string problem = "rho";
  std::pair<double, double> bracket{0.5, 30.0};
  std::optional<std::pair<double, double>> rho_bracket;
  double tol = 0.1;
  double threshold = 1e-4;
  double flow_tol = 1e-8;
  int max_iter = 50000;
  GridOption grid;
  std::string out = "critical_run";
};

int run_critical(const CriticalArgs& a) {
  const fs::path dir = prepare_out_dir(a.out);

  MinimizeConfig cfg;
  cfg.grid = a.grid.to_spec();
  cfg.tol = a.flow_tol;
  cfg.max_iter = a.max_iter;

  BifurcationResult res;
  if (a.problem == "rho") {
    res = find_rho_star(a.bracket.first, a.bracket.second, a.tol, a.alpha, cfg,
                        a.threshold);
  } else if (a.problem == "lambda") {
    res = find_lambda_star(a.bracket.first, a.bracket.second, a.tol, a.alpha,
                           cfg, a.threshold, a.rho_bracket);
  } else {
    throw ValidationError("--problem must be rho or lambda");
  }

  {
    std::ofstream csv(dir / "probes.csv");
    csv << "parameter,y_variation,value,omega,converged,branch\n";
    for (const ProbeRecord& p : res.probes)
      csv << fmt17(p.parameter) << ',' << fmt17(p.y_variation) << ','
          << fmt17(p.value) << ',' << fmt17(p.omega) << ','
          << (p.converged ? 1 : 0) << ','
          << (p.branch == Branch::rigid ? "rigid" : "broken") << "\n";
  }

  json j;
  j["schema"] = 1;
  j["command"] = "critical-mass";
  j["alpha"] = a.alpha;
  j["problem"] = a.problem;
  j["grid"] = grid_json(cfg.grid);
  j["bisection_tol"] = a.tol;
  j["threshold"] = res.threshold;
  j["bracket_lo"] = res.bracket_lo;
  j["bracket_hi"] = res.bracket_hi;
  j["probes"] = res.probes.size();
  if (a.problem == "lambda" && a.rho_bracket) {
    j["rho_bracket_lo"] = a.rho_bracket->first;
    j["rho_bracket_hi"] = a.rho_bracket->second;
    j["mapped_overlap_checked"] = true;
  }
  write_json(j, dir / "summary.json");
  return 0;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

struct EvolveArgs {
  double alpha = 1.0;
  double dt = 1e-3;
  double T = 1.0;
  int snapshot_every = 100;
  std::string init_field;
  double standing_omega = 0.0;  // > 0 selects the standing-wave initial data
  bool store_fields = true;
  GridOption grid;
  std::string out = "evolve_run";
};

int run_evolve(const EvolveArgs& a) {
  const fs::path dir = prepare_out_dir(a.out);

  Field u0;
  if (!a.init_field.empty()) {
    u0 = load_field(a.init_field);
  } else if (a.standing_omega > 0.0) {
    u0 = sample_profile(soliton_1d(a.standing_omega, a.alpha), a.grid.to_spec());
  } else {
    throw ValidationError("evolve needs --init-field or --standing-wave-omega");
  }

  EvolveConfig cfg{.dt = a.dt,
                   .T = a.T,
                   .snapshot_every = a.snapshot_every,
                   .store_fields = true};

  const fs::path field_dir = dir / "fields";
  if (a.store_fields) fs::create_directories(field_dir);
  int snap_index = 0;
  const Trajectory traj =
      split_step(u0, a.alpha, cfg, [&](double, const Field& u) {
        if (!a.store_fields) return;
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06d.nlsf", snap_index++);
        save_field(u, (field_dir / name).string());
      });

  {
    std::ofstream csv(dir / "series.csv");
    csv << "t,mass,energy\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      csv << fmt17(traj.times[i]) << ',' << fmt17(traj.mass_series[i]) << ','
          << fmt17(traj.energy_series[i]) << "\n";
  }

  const StrichartzReport sn = strichartz_norms(traj, a.alpha, 1);

  double mass_drift = 0.0, energy_drift = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    mass_drift = std::max(
        mass_drift, std::abs(traj.mass_series[i] - traj.mass_series.front()));
    energy_drift =
        std::max(energy_drift,
                 std::abs(traj.energy_series[i] - traj.energy_series.front()));
  }

  json j;
  j["schema"] = 1;
  j["command"] = "evolve";
  j["alpha"] = a.alpha;
  j["dt"] = a.dt;
  j["T"] = a.T;
  j["snapshot_every"] = a.snapshot_every;
  j["grid"] = grid_json(u0.spec);
  j["aborted"] = traj.aborted;
  j["snapshots"] = traj.snapshots.size();
  j["mass0"] = traj.mass_series.front();
  j["energy0"] = traj.energy_series.front();
  j["mass_drift"] = mass_drift;
  j["energy_drift"] = energy_drift;
  j["p"] = sn.p;
  j["q"] = sn.q;
  j["X_T"] = sn.X_T;
  j["Y_T"] = sn.Y_T;
  write_json(j, dir / "summary.json");
  return traj.aborted ? 2 : 0;
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

struct StabilityArgs {
  double rho = 0.5;
  double alpha = 1.0;
  double delta = 1e-2;
  double dt = 1e-3;
  double T = 20.0;
  int snapshot_every = 200;
  double factor = 5.0;
  double flow_tol = 1e-8;
  int max_iter = 50000;
  std::uint64_t seed = 7;
  GridOption grid;
  std::string out = "stability_run";
};

int run_stability(const StabilityArgs& a) {
  const fs::path dir = prepare_out_dir(a.out);

  MinimizeConfig mcfg;
  mcfg.grid = a.grid.to_spec();
  mcfg.tol = a.flow_tol;
  mcfg.max_iter = a.max_iter;
  EvolveConfig ecfg{.dt = a.dt, .T = a.T, .snapshot_every = a.snapshot_every};

  const StabilityReport r = stability_experiment(a.rho, a.delta, a.alpha, ecfg,
                                                 mcfg, a.factor, a.seed);

  {
    std::ofstream csv(dir / "series.csv");
    csv << "t,orbit_distance\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
      csv << fmt17(r.times[i]) << ',' << fmt17(r.distance_series[i]) << "\n";
  }

  json j;
  j["schema"] = 1;
  j["command"] = "stability";
  j["alpha"] = a.alpha;
  j["rho"] = a.rho;
  j["dt"] = a.dt;
  j["T"] = a.T;
  j["seed"] = a.seed;
  j["grid"] = grid_json(mcfg.grid);
  j["delta_requested"] = r.delta_requested;
  j["delta_measured"] = r.delta;
  // the allowance max_distance is compared against; a run choice, not a
  // theorem constant
  j["stability_factor"] = r.stability_factor;
  j["ground_omega"] = r.ground_omega;
  j["ground_value"] = r.ground_value;
  j["max_distance"] = r.max_distance;
  j["bounded"] = r.bounded;
  write_json(j, dir / "summary.json");
  return r.bounded ? 0 : 2;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int run_report(const std::vector<std::string>& dirs, const std::string& out) {
  const fs::path dir = prepare_out_dir(out.empty() ? "report" : out);

  json groups = json::object();
  json errors = json::array();
  std::vector<json> critical_runs;

  for (const std::string& d : dirs) {
    const fs::path summary = fs::path(d) / "summary.json";
    json s;
    try {
      std::ifstream is(summary);
      if (!is) throw ValidationError("missing " + summary.string());
      is >> s;
    } catch (const std::exception& e) {
      errors.push_back({{"dir", d}, {"error", e.what()}});
      continue;
    }
    const std::string command = s.value("command", "unknown");
    s["run_dir"] = d;
    if (!groups.contains(command)) groups[command] = json::array();
    groups[command].push_back(s);
    if (command == "critical-mass") critical_runs.push_back(s);
  }

  // nested-bracket consistency across critical-mass runs of the same problem
  json nested = json::array();
  for (std::size_t i = 0; i < critical_runs.size(); ++i)
    for (std::size_t k = 0; k < critical_runs.size(); ++k) {
      if (i == k) continue;
      const json& a = critical_runs[i];
      const json& b = critical_runs[k];
      if (a["alpha"] != b["alpha"] || a["problem"] != b["problem"]) continue;
      if (!(a["bisection_tol"].get<double>() < b["bisection_tol"].get<double>()))
        continue;
      const bool inside =
          a["bracket_lo"].get<double>() >= b["bracket_lo"].get<double>() - 1e-12 &&
          a["bracket_hi"].get<double>() <= b["bracket_hi"].get<double>() + 1e-12;
      nested.push_back({{"fine", a["run_dir"]},
                        {"coarse", b["run_dir"]},
                        {"nested", inside}});
    }

  json j;
  j["schema"] = 1;
  j["command"] = "report";
  j["groups"] = groups;
  j["errors"] = errors;
  j["nested_bracket_checks"] = nested;
  write_json(j, dir / "report.json");

  std::ofstream csv(dir / "report.csv");
  csv << "run_dir,command,key,value\n";
  for (auto& [command, runs] : groups.items())
    for (const json& run : runs)
      for (auto& [key, value] : run.items()) {
        if (!value.is_number()) continue;
        csv << run.value("run_dir", "") << ',' << command << ',' << key << ','
            << fmt17(value.get<double>()) << "\n";
      }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NLS ground states and dynamics on the product domain R x T"};
  app.require_subcommand(1);
  // config file mirrors the flag namespace: a [subcommand] section whose
  // key=value lines match that subcommand's flags; explicit flags override.
  // Usage: nlsprod --config run.ini <subcommand> [flag overrides]
  app.set_config("--config", "", "key=value config file; flags override");

  SolitonArgs soliton_args;
  auto* soliton_cmd =
      app.add_subcommand("soliton", "closed-form 1D ground-state report");
  soliton_cmd->add_option("--alpha", soliton_args.alpha, "nonlinearity exponent")
      ->check(CLI::Range(1e-9, 3.9999));
  soliton_cmd->add_option("--omega", soliton_args.omega, "frequency")
      ->check(CLI::PositiveNumber);
  soliton_cmd->add_option("--out", soliton_args.out, "output JSON path");

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "run the ground-state identity suite");
  verify_cmd->add_option("--alpha", verify_args.alpha, "nonlinearity exponent")
      ->check(CLI::Range(1e-9, 3.9999));
  verify_cmd->add_option("--out", verify_args.out, "output JSON path");

  MinimizeArgs min_args;
  auto* min_cmd = app.add_subcommand(
      "minimize", "constrained minimization on the mass sphere");
  min_cmd->add_option("--rho", min_args.rho, "target mass")
      ->check(CLI::PositiveNumber);
  min_cmd->add_option("--alpha", min_args.alpha, "nonlinearity exponent");
  min_cmd->add_option("--lambda", min_args.lambda, "y-kinetic weight");
  min_cmd->add_option("--init", min_args.init, "soliton|perturbed|random");
  min_cmd->add_option("--epsilon", min_args.epsilon,
                      "perturbation amplitude for --init perturbed");
  min_cmd->add_option("--tol", min_args.tol, "residual tolerance");
  min_cmd->add_option("--max-iter", min_args.max_iter, "iteration cap");
  min_cmd->add_option("--seed", min_args.seed, "seed for --init random");
  add_grid_option(min_cmd, min_args.grid);
  min_cmd->add_option("--out", min_args.out, "output directory");

  CriticalArgs crit_args;
  auto* crit_cmd = app.add_subcommand(
      "critical-mass", "bisect for the symmetry-breaking threshold");
  crit_cmd->add_option("--alpha", crit_args.alpha, "nonlinearity exponent");
  crit_cmd
      ->add_option_function<std::string>(
          "--bracket",
          [&crit_args](const std::string& s) {
            double lo, hi;
            if (std::sscanf(s.c_str(), "%lf,%lf", &lo, &hi) != 2)
              throw CLI::ValidationError("--bracket", "expected lo,hi");
            crit_args.bracket = {lo, hi};
          },
          "initial bracket lo,hi")
      ->required();
  crit_cmd->add_option("--tol", crit_args.tol, "bracket width target");
  crit_cmd->add_option("--problem", crit_args.problem,
                       "rho (mass axis) or lambda (coupling axis)");
  crit_cmd->add_option_function<std::string>(
      "--rho-bracket",
      [&crit_args](const std::string& s) {
        double lo, hi;
        if (std::sscanf(s.c_str(), "%lf,%lf", &lo, &hi) != 2)
          throw CLI::ValidationError("--rho-bracket", "expected lo,hi");
        crit_args.rho_bracket = std::make_pair(lo, hi);
      },
      "mass bracket to cross-check a lambda run against");
  crit_cmd->add_option("--threshold", crit_args.threshold,
                       "y-variation classification cutoff");
  crit_cmd->add_option("--flow-tol", crit_args.flow_tol, "probe residual tol");
  crit_cmd->add_option("--max-iter", crit_args.max_iter, "probe iteration cap");
  add_grid_option(crit_cmd, crit_args.grid);
  crit_cmd->add_option("--out", crit_args.out, "output directory");

  EvolveArgs evolve_args;
  auto* evolve_cmd = app.add_subcommand("evolve", "split-step time evolution");
  evolve_cmd->add_option("--alpha", evolve_args.alpha, "nonlinearity exponent");
  evolve_cmd->add_option("--dt", evolve_args.dt, "time step")
      ->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--T", evolve_args.T, "horizon")
      ->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--snapshot-every", evolve_args.snapshot_every,
                         "steps between stored snapshots");
  evolve_cmd->add_option("--init-field", evolve_args.init_field,
                         "binary field dump to start from");
  evolve_cmd->add_option("--standing-wave-omega", evolve_args.standing_omega,
                         "start from the soliton extension at this omega");
  evolve_cmd->add_flag("--store-fields,!--no-store-fields",
                       evolve_args.store_fields, "write snapshot dumps");
  add_grid_option(evolve_cmd, evolve_args.grid);
  evolve_cmd->add_option("--out", evolve_args.out, "output directory");

  StabilityArgs stab_args;
  auto* stab_cmd =
      app.add_subcommand("stability", "orbital stability experiment");
  stab_cmd->add_option("--rho", stab_args.rho, "ground-state mass");
  stab_cmd->add_option("--alpha", stab_args.alpha, "nonlinearity exponent");
  stab_cmd->add_option("--delta", stab_args.delta, "H1 perturbation size");
  stab_cmd->add_option("--dt", stab_args.dt, "time step");
  stab_cmd->add_option("--T", stab_args.T, "horizon");
  stab_cmd->add_option("--snapshot-every", stab_args.snapshot_every,
                       "steps between distance samples");
  stab_cmd->add_option("--factor", stab_args.factor,
                       "boundedness allowance multiplier");
  stab_cmd->add_option("--flow-tol", stab_args.flow_tol,
                       "ground-state residual tolerance");
  stab_cmd->add_option("--max-iter", stab_args.max_iter,
                       "ground-state iteration cap");
  stab_cmd->add_option("--seed", stab_args.seed, "noise seed");
  add_grid_option(stab_cmd, stab_args.grid);
  stab_cmd->add_option("--out", stab_args.out, "output directory");

  std::vector<std::string> report_dirs;
  std::string report_out;
  auto* report_cmd =
      app.add_subcommand("report", "merge run directories into one bundle");
  report_cmd->add_option("dirs", report_dirs, "run directories");
  report_cmd->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the offending flag
    return code == 0 ? 0 : 1;
  }

  auto guarded = [&](auto&& fn, const std::string& out_dir) -> int {
    try {
      return fn();
    } catch (const ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      if (!out_dir.empty()) {
        try {
          write_json(
              json{{"schema", 1}, {"error", e.what()}, {"kind", "validation"}},
              prepare_out_dir(out_dir) / "error.json");
        } catch (...) {
        }
      }
      return 1;
    } catch (const NumericalError& e) {
      std::cerr << "numerical failure: " << e.what() << "\n";
      if (!out_dir.empty()) {
        try {
          write_json(
              json{{"schema", 1}, {"error", e.what()}, {"kind", "numerical"}},
              prepare_out_dir(out_dir) / "error.json");
        } catch (...) {
        }
      }
      return 2;
    }
  };

  if (*soliton_cmd) return guarded([&] { return run_soliton(soliton_args); }, "");
  if (*verify_cmd) return guarded([&] { return run_verify(verify_args); }, "");
  if (*min_cmd)
    return guarded([&] { return run_minimize(min_args); }, min_args.out);
  if (*crit_cmd)
    return guarded([&] { return run_critical(crit_args); }, crit_args.out);
  if (*evolve_cmd)
    return guarded([&] { return run_evolve(evolve_args); }, evolve_args.out);
  if (*stab_cmd)
    return guarded([&] { return run_stability(stab_args); }, stab_args.out);
  if (*report_cmd)
    return guarded([&] { return run_report(report_dirs, report_out); },
                   report_out);
  return 1;
}
