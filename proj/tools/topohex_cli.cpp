// Command-line front end: `run` drives a full optimization and writes
// history.csv, density.csv and design.svg; `mesh` and `k0` dump the
// tessellation and the unit element stiffness matrix for inspection.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "topohex/config.hpp"
#include "topohex/export.hpp"

namespace fs = std::filesystem;

namespace {

struct RawArgs {
  std::string problem, rfill, outdir, config;
  int hnex = 0, hney = 0, ft = 0, maxiter = 0;
  double volfrac = 0, penal = 0, nu = 0, move = 0, change_tol = 0;
};

// Temp-file handle: everything is written next to its final location and
// renamed once the whole run has succeeded, so failures leave nothing
// half-written behind.
class StagedFile {
 public:
  StagedFile(const fs::path& final_path)
      : final_(final_path),
        tmp_(final_path.string() + ".tmp-" +
             std::to_string(static_cast<long>(::getpid()))) {}
  ~StagedFile() {
    if (!committed_) {
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  const std::string& path() const { return tmp_string_; }
  void commit() {
    fs::rename(tmp_, final_);
    committed_ = true;
  }

 private:
  fs::path final_;
  fs::path tmp_;
  std::string tmp_string_ = tmp_.string();
  bool committed_ = false;
};

int run_command(const RawArgs& raw, const CLI::App& cmd) {
  topohex::RunConfig cfg;
  std::vector<std::string> errors;

  if (!raw.config.empty()) {
    try {
      topohex::apply_config_file(cfg, raw.config);
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  if (cmd.count("--problem")) cfg.problem = raw.problem;
  if (cmd.count("--hnex")) cfg.hnex = raw.hnex;
  if (cmd.count("--hney")) cfg.hney = raw.hney;
  if (cmd.count("--rfill")) {
    try {
      cfg.rfill = topohex::parse_rfill(raw.rfill);
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  if (cmd.count("--volfrac")) cfg.volfrac = raw.volfrac;
  if (cmd.count("--penal")) cfg.penal = raw.penal;
  if (cmd.count("--ft")) cfg.ft = raw.ft;
  if (cmd.count("--nu")) cfg.nu = raw.nu;
  if (cmd.count("--move")) cfg.move = raw.move;
  if (cmd.count("--maxiter")) cfg.maxiter = raw.maxiter;
  if (cmd.count("--change-tol")) cfg.change_tol = raw.change_tol;
  if (cmd.count("--out")) cfg.outdir = raw.outdir;

  for (const auto& msg : topohex::validate(cfg)) errors.push_back(msg);
  if (!errors.empty()) {
    std::cerr << "usage error:\n";
    for (const auto& msg : errors) std::cerr << "  - " << msg << '\n';
    return 2;
  }

  try {
    const fs::path outdir(cfg.outdir);
    fs::create_directories(outdir);
    if (!fs::is_directory(outdir)) {
      throw std::runtime_error("cli: '" + cfg.outdir +
                               "' is not a directory");
    }

    topohex::RunResult result = topohex::execute(cfg, &std::cout);

    StagedFile history(outdir / "history.csv");
    StagedFile density(outdir / "density.csv");
    StagedFile svg(outdir / "design.svg");
    topohex::write_history_csv(result.state.history, history.path());
    topohex::write_density_csv(result.mesh, result.state.xphys,
                               density.path());
    topohex::RenderSpec render;
    render.path = svg.path();
    topohex::render_svg(result.mesh, result.state.xphys, render);
    history.commit();
    density.commit();
    svg.commit();

    char line[128];
    std::snprintf(line, sizeof(line), "final obj=%.4f vol=%.3f iters=%d",
                  result.state.c, result.state.xphys.sum() / result.mesh.nelem,
                  result.state.loop);
    std::cout << line << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int mesh_command(int hnex, int hney, const std::string& out) {
  try {
    const topohex::HexMesh mesh = topohex::build_mesh({hnex, hney});
    StagedFile staged(out);
    topohex::write_mesh_csv(mesh, staged.path());
    staged.commit();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int k0_command(double nu, const std::string& out) {
  try {
    const topohex::ElementStiffness ke = topohex::wachspress_k0(nu);
    StagedFile staged(out);
    std::ofstream f(staged.path());
    if (!f) throw std::runtime_error("cli: cannot open '" + out + "'");
    f.precision(std::numeric_limits<double>::max_digits10);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        f << ke.k0(i, j) << (j + 1 < 12 ? ',' : '\n');
      }
    }
    f.close();
    staged.commit();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compliance-minimization topology optimization on honeycomb meshes"};
  app.require_subcommand(1);

  RawArgs raw;
  CLI::App* run = app.add_subcommand("run", "Run an optimization");
  run->add_option("--problem", raw.problem,
                  "mbb, multiload2, multiload4, passive or custom");
  run->add_option("--hnex", raw.hnex, "hexagons along x");
  run->add_option("--hney", raw.hney, "hexagons along y");
  run->add_option("--rfill", raw.rfill,
                  "filter radius; accepts '<k>*sqrt3' or a plain number");
  run->add_option("--volfrac", raw.volfrac, "volume fraction in (0, 1)");
  run->add_option("--penal", raw.penal, "SIMP penalization (default 3)");
  run->add_option("--ft", raw.ft,
                  "filter mode: 0 none, 1 sensitivity, 2 density (default 1)");
  run->add_option("--nu", raw.nu, "Poisson ratio (default 0.3)");
  run->add_option("--move", raw.move, "OC move limit (default 0.2)");
  run->add_option("--maxiter", raw.maxiter, "iteration cap (default 200)");
  run->add_option("--change-tol", raw.change_tol,
                  "stop when max density change drops below (default 0.01)");
  run->add_option("--out", raw.outdir, "output directory (default .)");
  run->add_option("--config", raw.config,
                  "flat key=value file with the same keys; flags override");

  int mesh_hnex = 1, mesh_hney = 1;
  std::string mesh_out = "mesh.csv";
  CLI::App* mesh = app.add_subcommand("mesh", "Dump the tessellation as CSV");
  mesh->add_option("--hnex", mesh_hnex, "hexagons along x")->required();
  mesh->add_option("--hney", mesh_hney, "hexagons along y")->required();
  mesh->add_option("--out", mesh_out, "output path (default mesh.csv)");

  double k0_nu = 0.3;
  std::string k0_out = "k0.csv";
  CLI::App* k0 = app.add_subcommand(
      "k0", "Dump the unit element stiffness matrix as CSV");
  k0->add_option("--nu", k0_nu, "Poisson ratio (default 0.3)");
  k0->add_option("--out", k0_out, "output path (default k0.csv)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(raw, *run);
  if (mesh->parsed()) return mesh_command(mesh_hnex, mesh_hney, mesh_out);
  if (k0->parsed()) return k0_command(k0_nu, k0_out);
  return 2;
}
