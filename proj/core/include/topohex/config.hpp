#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "topohex/optimizer.hpp"
#include "topohex/problems.hpp"

namespace topohex {

/// Everything a run needs. Defaults follow the CLI contract; hnex/hney,
/// rfill and volfrac have no usable defaults and must be supplied.
struct RunConfig {
  std::string problem = "mbb";
  int hnex = 0;
  int hney = 0;
  double rfill = 0.0;
  double volfrac = 0.0;
  double penal = 3.0;
  int ft = 1;
  double nu = 0.3;
  double move = 0.2;
  int maxiter = 200;
  double change_tol = 0.01;
  std::string outdir = ".";
  CustomProblemSpec custom;
};

/// Filter radii in the benchmarks are sqrt(3) multiples, so the CLI accepts
/// `<k>*sqrt3` (and `<k>*sqrt(3)`) as well as a plain number.
double parse_rfill(const std::string& text);

/// Merges `key = value` lines from a flat config file into `cfg`. Repeated
/// problem-primitive keys (load, clamp, void_circle, solid_box) accumulate.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Returns every violated constraint, empty when the config is usable.
std::vector<std::string> validate(const RunConfig& cfg);

/// Builds mesh, problem and filter from the config and runs the optimizer.
struct RunResult {
  HexMesh mesh;
  Problem problem;
  DesignState state;
};
RunResult execute(const RunConfig& cfg, std::ostream* log = nullptr);

}  // namespace topohex
