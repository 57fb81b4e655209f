// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nlsprod/grid.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

#ifndef NLSPROD_BIN
#error "NLSPROD_BIN must point at the CLI binary"
#endif

namespace {

const std::string kGrid = " --grid 128,8,16,6.283185307179586 ";

int run(const std::string& args) {
  const std::string cmd = std::string(NLSPROD_BIN) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json read_json(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  json j;
  is >> j;
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("soliton subcommand emits the closed-form record") {
  TempDir tmp("nlsprod_cli_soliton");
  const fs::path out = tmp.path / "soliton.json";
  REQUIRE(run("soliton --alpha 1 --omega 1 --out " + out.string()) == 0);
  const json j = read_json(out);
  CHECK(j["schema"] == 1);
  CHECK(j["A"].get<double>() == doctest::Approx(1.5));
  CHECK(j["B"].get<double>() == doctest::Approx(0.5));
  CHECK(j["rho"].get<double>() == doctest::Approx(std::sqrt(6.0)));
  CHECK(j["energy"].get<double>() == doctest::Approx(-1.8).epsilon(1e-9));
  CHECK(std::abs(j["residuals"]["poza"].get<double>()) < 1e-8);
}

TEST_CASE("verify subcommand passes and exits 0") {
  TempDir tmp("nlsprod_cli_verify");
  const fs::path out = tmp.path / "verify.json";
  REQUIRE(run("verify --alpha 1 --out " + out.string()) == 0);
  const json j = read_json(out);
  CHECK(j["passed"] == true);
  for (const auto& c : j["cases"])
    CHECK(std::abs(c["ode_sup"].get<double>()) < 1e-6);
}

TEST_CASE("malformed flags name the flag and exit 1") {
  CHECK(run("soliton --alpha notanumber 2>/dev/null") == 1);
  CHECK(run("minimize --rho -3 2>/dev/null") == 1);
  CHECK(run("critical-mass --alpha 1 2>/dev/null") == 1);  // --bracket required
  CHECK(run("frobnicate 2>/dev/null") == 1);
}

TEST_CASE("minimize run: summary, iteration log, field dump round trip") {
  TempDir tmp("nlsprod_cli_minimize");
  const fs::path dir = tmp.path / "run";
  REQUIRE(run("minimize --rho 1.5 --alpha 1" + kGrid + "--out " + dir.string()) ==
          0);
  const json j = read_json(dir / "summary.json");
  CHECK(j["converged"] == true);
  CHECK(j["y_variation"].get<double>() < 1e-4);
  CHECK(j.contains("trivial_upper_bound"));

  // iteration log has a header plus one row per trace point
  const std::string csv = slurp(dir / "iterations.csv");
  CHECK(csv.rfind("iter,energy,residual,y_variation", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 2);

  // the field dump reloads onto the same grid with the right mass
  const nlsprod::Field u = nlsprod::load_field((dir / "field.nlsf").string());
  CHECK(u.spec.Nx == 128);
  CHECK(std::sqrt(nlsprod::mass_sq(u)) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("identical configurations give bit-identical summaries") {
  TempDir tmp("nlsprod_cli_determinism");
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  const std::string args =
      "minimize --rho 1.5 --alpha 1 --init random --seed 42" + kGrid + "--out ";
  REQUIRE(run(args + a.string()) == 0);
  REQUIRE(run(args + b.string()) == 0);
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  CHECK(slurp(a / "iterations.csv") == slurp(b / "iterations.csv"));
  CHECK(slurp(a / "field.nlsf") == slurp(b / "field.nlsf"));
}

TEST_CASE("config file values are used and flags override them") {
  TempDir tmp("nlsprod_cli_config");
  const fs::path cfg = tmp.path / "run.ini";
  {
    std::ofstream os(cfg);
    os << "[minimize]\n";
    os << "rho=1.5\n";
    os << "alpha=1\n";
    // comma-carrying values must be quoted in the config format
    os << "grid=\"128,8,16,6.283185307179586\"\n";
    os << "out=" << (tmp.path / "from_config").string() << "\n";
  }
  REQUIRE(run("--config " + cfg.string() + " minimize") == 0);
  CHECK(read_json(tmp.path / "from_config" / "summary.json")["rho"] == 1.5);

  REQUIRE(run("--config " + cfg.string() + " minimize --rho 2.0 --out " +
              (tmp.path / "flag_wins").string()) == 0);
  CHECK(read_json(tmp.path / "flag_wins" / "summary.json")["rho"] == 2.0);
}

TEST_CASE("evolve run emits series, snapshots, and mixed norms") {
  TempDir tmp("nlsprod_cli_evolve");
  const fs::path dir = tmp.path / "run";
  REQUIRE(run("evolve --alpha 1 --standing-wave-omega 1 --dt 0.01 --T 0.2 "
              "--snapshot-every 10" +
              kGrid + "--out " + dir.string()) == 0);
  const json j = read_json(dir / "summary.json");
  CHECK(j["p"].get<double>() == doctest::Approx(12.0));
  CHECK(j["q"].get<double>() == doctest::Approx(3.0));
  CHECK(j["X_T"].get<double>() > 0.0);
  CHECK(j["mass_drift"].get<double>() < 1e-12 * j["mass0"].get<double>());
  CHECK(fs::exists(dir / "fields" / "snap_000000.nlsf"));

  const std::string csv = slurp(dir / "series.csv");
  CHECK(csv.rfind("t,mass,energy", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);  // header + 21 steps

  SUBCASE("a stored snapshot seeds a follow-up evolution") {
    const fs::path dir2 = tmp.path / "run2";
    REQUIRE(run("evolve --alpha 1 --init-field " +
                (dir / "fields" / "snap_000002.nlsf").string() +
                " --dt 0.01 --T 0.1 --no-store-fields --out " + dir2.string()) ==
            0);
    CHECK(read_json(dir2 / "summary.json")["aborted"] == false);
  }
  SUBCASE("missing initial data is a validation error") {
    CHECK(run("evolve --alpha 1 --dt 0.01 --T 0.1 --out " +
              (tmp.path / "bad").string() + " 2>/dev/null") == 1);
    CHECK(fs::exists(tmp.path / "bad" / "error.json"));
  }
}

TEST_CASE("stability run records the orbit distance series") {
  TempDir tmp("nlsprod_cli_stability");
  const fs::path dir = tmp.path / "run";
  REQUIRE(run("stability --rho 2.5 --alpha 1 --delta 0.01 --dt 0.002 --T 0.5 "
              "--snapshot-every 50" +
              kGrid + "--out " + dir.string()) == 0);
  const json j = read_json(dir / "summary.json");
  CHECK(j["bounded"] == true);
  CHECK(j["delta_measured"].get<double>() ==
        doctest::Approx(0.01).epsilon(0.05));
  const std::string csv = slurp(dir / "series.csv");
  CHECK(csv.rfind("t,orbit_distance", 0) == 0);
}

TEST_CASE("report merges runs, groups by command, flags corruption") {
  TempDir tmp("nlsprod_cli_report");
  const fs::path m1 = tmp.path / "m1";
  const fs::path c1 = tmp.path / "c1";
  const fs::path c2 = tmp.path / "c2";
  REQUIRE(run("minimize --rho 1.5 --alpha 1" + kGrid + "--out " + m1.string()) ==
          0);
  // two critical-mass runs at nested tolerances on a coarse grid
  const std::string bif_grid = " --grid 256,16,24,6.283185307179586 ";
  REQUIRE(run("critical-mass --alpha 1 --bracket 3,7 --tol 1.0" + bif_grid +
              "--out " + c1.string()) == 0);
  REQUIRE(run("critical-mass --alpha 1 --bracket 3,7 --tol 0.5" + bif_grid +
              "--out " + c2.string()) == 0);

  const fs::path corrupt = tmp.path / "corrupt";
  fs::create_directories(corrupt);
  std::ofstream(corrupt / "summary.json") << "{ not json";

  const fs::path out = tmp.path / "merged";
  REQUIRE(run("report " + m1.string() + " " + c1.string() + " " + c2.string() +
              " " + corrupt.string() + " --out " + out.string()) == 0);
  const json j = read_json(out / "report.json");
  CHECK(j["groups"]["minimize"].size() == 1);
  CHECK(j["groups"]["critical-mass"].size() == 2);
  CHECK(j["errors"].size() == 1);
  REQUIRE(j["nested_bracket_checks"].size() >= 1);
  for (const auto& check : j["nested_bracket_checks"])
    CHECK(check["nested"] == true);
  CHECK(fs::exists(out / "report.csv"));

  SUBCASE("empty input produces an empty report and exit 0") {
    const fs::path out2 = tmp.path / "empty";
    REQUIRE(run("report --out " + out2.string()) == 0);
    const json e = read_json(out2 / "report.json");
    CHECK(e["groups"].empty());
    CHECK(e["errors"].empty());
  }
}
