#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "topohex/element.hpp"
#include "topohex/fea.hpp"
#include "topohex/filter.hpp"
#include "topohex/mesh.hpp"

namespace topohex {

enum class ElementTag : std::int8_t { active = 0, solid = 1, passive_void = -1 };

/// Non-design regions: solid elements are pinned at density 1, void
/// elements at 0, at every iteration.
struct PassiveMask {
  std::vector<ElementTag> tags;

  static PassiveMask all_active(int nelem) {
    return PassiveMask{std::vector<ElementTag>(nelem, ElementTag::active)};
  }
  int count(ElementTag t) const;
  bool any_passive() const;
};

struct IterationRecord {
  int iter = 0;
  double compliance = 0.0;
  double volume_fraction = 0.0;
  double change = 0.0;
};

struct DesignState {
  Eigen::VectorXd x;
  Eigen::VectorXd xphys;
  Eigen::VectorXd dc;
  Eigen::VectorXd dv;
  double c = 0.0;
  int loop = 0;
  double change = 0.0;
  std::vector<IterationRecord> history;
  /// Largest relative miss of the bisection volume target over all updates.
  double max_volume_error = 0.0;
};

struct OptimizerOptions {
  double volfrac = 0.5;
  FilterMode ft = FilterMode::sensitivity;
  double move = 0.2;
  int maxiter = 200;
  double change_tol = 0.01;
};

/// c = sum over cases of sum_j E(xphys_j) ce_j;
/// dc_j = -sum over cases of E'(xphys_j) ce_j (nonpositive).
std::pair<double, Eigen::VectorXd> objective_and_sensitivity(
    const Eigen::VectorXd& xphys, const SolveResult& solved,
    const MaterialModel& m);

struct OcOptions {
  double volfrac = 0.5;
  double move = 0.2;
  /// Volume of the active elements as a function of the candidate design;
  /// defaults to their plain sum. The density-filter path passes the
  /// filtered physical volume instead.
  std::function<double(const Eigen::VectorXd&)> volume_of;
  /// Filled with the relative miss of the bisection volume target at the
  /// accepted multiplier, when non-null.
  double* volume_error = nullptr;
};

/// One optimality-criteria step: bisection on the volume multiplier in
/// [0, 1e9] until the bracket is relatively tighter than 1e-3, with the
/// classic x * sqrt(-dc / (dv * lambda)) candidate clamped to the move
/// limits and [0, 1]. Passive elements are left untouched; the bisection
/// drives the total physical material (solids pinned at 1, voids at 0) to
/// volfrac * nelem, i.e. the active elements to volfrac * nelem - #solid.
Eigen::VectorXd oc_update(const Eigen::VectorXd& x, const Eigen::VectorXd& dc,
                          const Eigen::VectorXd& dv, const PassiveMask& mask,
                          const OcOptions& opts);

/// Initial active density per the benchmark convention:
/// (volfrac * (nelem - #solid) - #void) / #active.
double initial_active_density(double volfrac, const PassiveMask& mask);

/// Full compliance-minimization loop. Logs one line per iteration to `log`
/// when non-null.
DesignState run(const HexMesh& mesh, const ElementStiffness& ke,
                const MaterialModel& m, const LoadSet& loads,
                const PassiveMask& mask, const FilterOperator& filter,
                const OptimizerOptions& opts, std::ostream* log = nullptr);

}  // namespace topohex
