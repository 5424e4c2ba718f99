#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "topohex/config.hpp"

using topohex::parse_rfill;
using topohex::RunConfig;

namespace fs = std::filesystem;

namespace {

#ifndef TOPOHEX_CLI
#define TOPOHEX_CLI "topohex"
#endif

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string out_path =
      (fs::temp_directory_path() / "topohex_cli_test_out.txt").string();
  const std::string cmd =
      std::string(TOPOHEX_CLI) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

}  // namespace

TEST_CASE("rfill expressions") {
  CHECK(parse_rfill("2.4*sqrt3") ==
        doctest::Approx(2.4 * std::numbers::sqrt3).epsilon(1e-15));
  CHECK(parse_rfill("4 * sqrt(3)") ==
        doctest::Approx(4.0 * std::numbers::sqrt3).epsilon(1e-15));
  CHECK(parse_rfill("sqrt3") ==
        doctest::Approx(std::numbers::sqrt3).epsilon(1e-15));
  CHECK(parse_rfill("1.5") == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_rfill("2.4*sqrt2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rfill("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rfill(""), std::invalid_argument);
}

TEST_CASE("validate reports every violated constraint") {
  RunConfig cfg;  // hnex/hney/rfill/volfrac unset
  cfg.problem = "nope";
  cfg.ft = 3;
  cfg.nu = 0.7;
  const auto errors = topohex::validate(cfg);
  // problem, hnex, hney, rfill, volfrac, ft, nu all wrong at once.
  CHECK(errors.size() == 7);

  RunConfig good;
  good.problem = "mbb";
  good.hnex = 60;
  good.hney = 20;
  good.rfill = parse_rfill("2.4*sqrt3");
  good.volfrac = 0.5;
  CHECK(topohex::validate(good).empty());
}

TEST_CASE("config file merge and precedence") {
  const fs::path path = fs::temp_directory_path() / "topohex_test.cfg";
  {
    std::ofstream out(path);
    out << "# benchmark configuration\n"
        << "problem = mbb\n"
        << "hnex = 60\n"
        << "hney = 20\n"
        << "rfill = 2.4*sqrt3\n"
        << "volfrac = 0.5\n"
        << "ft = 1\n";
  }
  RunConfig cfg;
  topohex::apply_config_file(cfg, path.string());
  CHECK(cfg.hnex == 60);
  CHECK(cfg.hney == 20);
  CHECK(cfg.rfill == doctest::Approx(2.4 * std::numbers::sqrt3));
  CHECK(cfg.volfrac == 0.5);
  CHECK(topohex::validate(cfg).empty());
  fs::remove(path);

  CHECK_THROWS_AS(topohex::apply_config_file(cfg, "missing.cfg"),
                  std::invalid_argument);
}

TEST_CASE("config file custom problem primitives") {
  const fs::path path = fs::temp_directory_path() / "topohex_custom.cfg";
  {
    std::ofstream out(path);
    out << "problem = custom\n"
           "hnex = 8\nhney = 6\nrfill = 1.5*sqrt3\nvolfrac = 0.45\n"
           "clamp = left xy\n"
           "load = 13.8 9.0 y -1 1\n"
           "void_circle = 5 4 2\n"
           "solid_box = 9 1 12 3\n";
  }
  RunConfig cfg;
  topohex::apply_config_file(cfg, path.string());
  CHECK(cfg.custom.loads.size() == 1);
  CHECK(cfg.custom.clamps.size() == 1);
  CHECK(cfg.custom.void_circles.size() == 1);
  CHECK(cfg.custom.solid_boxes.size() == 1);
  CHECK(topohex::validate(cfg).empty());

  const topohex::RunResult result = topohex::execute(cfg);
  CHECK(result.state.loop >= 1);
  CHECK(result.state.xphys.size() == 48);
  fs::remove(path);
}

TEST_CASE("cli: paper invocations parse and a bad ft is a usage error") {
  // Validation only: a 1x1 run would still optimize, so use --help style
  // checks plus an actual tiny run.
  auto usage = run_cli("run --problem mbb --hnex 60 --hney 20 "
                       "--rfill 2.4*sqrt3 --volfrac 0.5 --penal 3 --ft 3");
  CHECK(usage.exit_code == 2);
  CHECK(usage.output.find("ft must be 0, 1 or 2") != std::string::npos);

  auto multi = run_cli("run --problem multiload4 --hnex 120 --hney 120 "
                       "--rfill 4*sqrt3 --volfrac 1.4 --ft 5");
  CHECK(multi.exit_code == 2);
  CHECK(multi.output.find("volfrac") != std::string::npos);
  CHECK(multi.output.find("ft must be") != std::string::npos);

  auto help = run_cli("run --help");
  CHECK(help.exit_code == 0);
  for (const char* flag :
       {"--problem", "--hnex", "--hney", "--rfill", "--volfrac", "--penal",
        "--ft", "--nu", "--move", "--maxiter", "--change-tol", "--out",
        "--config"}) {
    CHECK(help.output.find(flag) != std::string::npos);
  }
}

TEST_CASE("cli: tiny run produces the three outputs and a summary") {
  const fs::path outdir = fs::temp_directory_path() / "topohex_cli_run";
  fs::remove_all(outdir);
  auto result = run_cli("run --problem mbb --hnex 6 --hney 4 --rfill 1.5 "
                        "--volfrac 0.5 --maxiter 5 --out " + outdir.string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(outdir / "history.csv"));
  CHECK(fs::exists(outdir / "density.csv"));
  CHECK(fs::exists(outdir / "design.svg"));
  CHECK(result.output.find("final obj=") != std::string::npos);
  CHECK(result.output.find("it=1 obj=") != std::string::npos);

  // No stray temp files.
  for (const auto& entry : fs::directory_iterator(outdir)) {
    CHECK(entry.path().string().find(".tmp-") == std::string::npos);
  }

  // Identical invocation produces identical outputs.
  const std::string first = [&] {
    std::ifstream in(outdir / "density.csv");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }();
  auto rerun = run_cli("run --problem mbb --hnex 6 --hney 4 --rfill 1.5 "
                       "--volfrac 0.5 --maxiter 5 --out " + outdir.string());
  CHECK(rerun.exit_code == 0);
  std::ifstream in(outdir / "density.csv");
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == first);
  fs::remove_all(outdir);
}

TEST_CASE("cli: unwritable output directory leaves nothing behind") {
  auto result = run_cli("run --problem mbb --hnex 4 --hney 2 --rfill 1.5 "
                        "--volfrac 0.5 --maxiter 2 --out /proc/topohex_nope");
  CHECK(result.exit_code == 1);
  CHECK_FALSE(fs::exists("/proc/topohex_nope/history.csv"));
}

TEST_CASE("cli: mesh and k0 dumps") {
  const fs::path mesh_path = fs::temp_directory_path() / "topohex_mesh.csv";
  auto mesh_result = run_cli("mesh --hnex 3 --hney 2 --out " +
                             mesh_path.string());
  CHECK(mesh_result.exit_code == 0);
  std::ifstream mesh_in(mesh_path);
  std::string line;
  std::getline(mesh_in, line);
  CHECK(line == "nodes: id,x,y");
  fs::remove(mesh_path);

  const fs::path k0_path = fs::temp_directory_path() / "topohex_k0.csv";
  auto k0_result = run_cli("k0 --nu 0.3 --out " + k0_path.string());
  CHECK(k0_result.exit_code == 0);
  std::ifstream k0_in(k0_path);
  int rows = 0;
  while (std::getline(k0_in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
    ++rows;
  }
  CHECK(rows == 12);
  fs::remove(k0_path);
}
