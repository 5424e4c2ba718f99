#include "topohex/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace topohex {

int PassiveMask::count(ElementTag t) const {
  return static_cast<int>(std::count(tags.begin(), tags.end(), t));
}

bool PassiveMask::any_passive() const {
  return std::any_of(tags.begin(), tags.end(),
                     [](ElementTag t) { return t != ElementTag::active; });
}

std::pair<double, Eigen::VectorXd> objective_and_sensitivity(
    const Eigen::VectorXd& xphys, const SolveResult& solved,
    const MaterialModel& m) {
  const auto n = xphys.size();
  double c = 0.0;
  Eigen::VectorXd dc = Eigen::VectorXd::Zero(n);
  for (const auto& ce : solved.element_energies) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c += simp_modulus(xphys[j], m) * ce[j];
      dc[j] -= simp_dmodulus(xphys[j], m) * ce[j];
    }
  }
  return {c, dc};
}

double initial_active_density(double volfrac, const PassiveMask& mask) {
  const int nelem = static_cast<int>(mask.tags.size());
  const int nsolid = mask.count(ElementTag::solid);
  const int nvoid = mask.count(ElementTag::passive_void);
  const int nactive = mask.count(ElementTag::active);
  if (nactive == 0) {
    throw std::invalid_argument("optimizer: no active elements");
  }
  return (volfrac * (nelem - nsolid) - nvoid) / nactive;
}

namespace {

double active_sum(const Eigen::VectorXd& x, const PassiveMask& mask) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (mask.tags[j] == ElementTag::active) s += x[j];
  }
  return s;
}

void apply_mask(Eigen::VectorXd& xphys, const PassiveMask& mask) {
  for (Eigen::Index j = 0; j < xphys.size(); ++j) {
    if (mask.tags[j] == ElementTag::solid) xphys[j] = 1.0;
    if (mask.tags[j] == ElementTag::passive_void) xphys[j] = 0.0;
  }
}

}  // namespace

Eigen::VectorXd oc_update(const Eigen::VectorXd& x, const Eigen::VectorXd& dc,
                          const Eigen::VectorXd& dv, const PassiveMask& mask,
                          const OcOptions& opts) {
  const auto n = x.size();
  if (dc.size() != n || dv.size() != n ||
      static_cast<Eigen::Index>(mask.tags.size()) != n) {
    throw std::invalid_argument("optimizer: oc_update size mismatch");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (mask.tags[j] != ElementTag::active) continue;
    if (dc[j] > 1e-12) {
      throw std::invalid_argument(
          "optimizer: compliance sensitivity must be nonpositive");
    }
    if (!(dv[j] > 0.0)) {
      throw std::invalid_argument(
          "optimizer: volume sensitivity must be positive");
    }
  }
  if (!(opts.move > 0.0)) {
    throw std::invalid_argument("optimizer: move must be positive");
  }

  const auto volume_of = [&](const Eigen::VectorXd& cand) {
    return opts.volume_of ? opts.volume_of(cand) : active_sum(cand, mask);
  };
  // Solids contribute exactly #solid to the physical volume and voids
  // nothing, so the active elements carry the remainder of the budget.
  const double target = opts.volfrac * static_cast<double>(n) -
                        mask.count(ElementTag::solid);

  Eigen::VectorXd cand = x;
  auto candidate_at = [&](double lambda) -> const Eigen::VectorXd& {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (mask.tags[j] != ElementTag::active) continue;
      const double lo = std::max(0.0, x[j] - opts.move);
      const double hi = std::min(1.0, x[j] + opts.move);
      double scaled;
      if (x[j] == 0.0) {
        scaled = 0.0;  // multiplicative update keeps exact zeros
      } else if (lambda > 0.0) {
        scaled = x[j] * std::sqrt(std::max(0.0, -dc[j]) / (dv[j] * lambda));
      } else {
        scaled = std::numeric_limits<double>::infinity();
      }
      cand[j] = std::clamp(scaled, lo, hi);
    }
    return cand;
  };

  double lo = 0.0, hi = 1e9;
  if (volume_of(candidate_at(lo)) < target - 1e-9 ||
      volume_of(candidate_at(hi)) > target + 1e-9) {
    throw std::runtime_error(
        "optimizer: volume target unreachable within multiplier bracket");
  }
  while ((hi - lo) / (hi + lo) > 1e-3 && hi > 1e-30) {
    const double mid = 0.5 * (lo + hi);
    if (volume_of(candidate_at(mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Eigen::VectorXd& result = candidate_at(0.5 * (lo + hi));
  if (opts.volume_error != nullptr) {
    const double denom = std::max(1.0, std::abs(target));
    *opts.volume_error = std::abs(volume_of(result) - target) / denom;
  }
  return result;
}

DesignState run(const HexMesh& mesh, const ElementStiffness& ke,
                const MaterialModel& m, const LoadSet& loads,
                const PassiveMask& mask, const FilterOperator& filter,
                const OptimizerOptions& opts, std::ostream* log) {
  const int nelem = mesh.nelem;
  if (static_cast<int>(mask.tags.size()) != nelem) {
    throw std::invalid_argument("optimizer: mask size mismatch");
  }
  if (!(opts.volfrac > 0.0 && opts.volfrac <= 1.0)) {
    throw std::invalid_argument("optimizer: volfrac must lie in (0, 1]");
  }
  const int nactive = mask.count(ElementTag::active);
  const int nsolid = mask.count(ElementTag::solid);
  if (nactive == 0) {
    throw std::invalid_argument("optimizer: no active elements");
  }
  const double init = initial_active_density(opts.volfrac, mask);
  const double oc_target = opts.volfrac * nelem - nsolid;
  if (!(init > 0.0 && init <= 1.0) || !(oc_target > 0.0) ||
      oc_target > nactive) {
    throw std::invalid_argument(
        "optimizer: passive regions leave no feasible volume budget");
  }

  DesignState state;
  state.x = Eigen::VectorXd::Constant(nelem, init);
  for (int j = 0; j < nelem; ++j) {
    if (mask.tags[j] == ElementTag::solid) state.x[j] = 1.0;
    if (mask.tags[j] == ElementTag::passive_void) state.x[j] = 0.0;
  }

  auto physical = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd xphys =
        (opts.ft == FilterMode::density) ? filter.filter_density(x) : x;
    apply_mask(xphys, mask);
    return xphys;
  };

  OcOptions oc;
  oc.volfrac = opts.volfrac;
  oc.move = opts.move;
  Eigen::VectorXd phys_weight;
  if (opts.ft == FilterMode::density) {
    // Bisect on the physical material volume so the converged design meets
    // the budget after filtering, not just in the design variables. The
    // active physical volume is linear in the candidate, so it reduces to a
    // dot product with precomputed column weights of the normalized filter.
    phys_weight = Eigen::VectorXd::Zero(nelem);
    for (int j = 0; j < nelem; ++j) {
      if (mask.tags[j] != ElementTag::active) continue;
      for (int idx = filter.row_begin(j); idx < filter.row_end(j); ++idx) {
        phys_weight[filter.col(idx)] += filter.weight(idx) / filter.row_sum(j);
      }
    }
    oc.volume_of = [&phys_weight](const Eigen::VectorXd& cand) {
      return phys_weight.dot(cand);
    };
  }

  state.dv = Eigen::VectorXd::Constant(nelem, 1.0 / (nelem * opts.volfrac));
  state.xphys = physical(state.x);
  state.change = 1.0;

  while (state.change > opts.change_tol && state.loop < opts.maxiter) {
    ++state.loop;

    const Eigen::SparseMatrix<double> k = assemble(mesh, state.xphys, m, ke);
    const SolveResult solved = solve(k, loads, mesh, ke);
    auto [c, dc] = objective_and_sensitivity(state.xphys, solved, m);
    if (!std::isfinite(c)) {
      throw std::runtime_error("optimizer: objective is not finite");
    }
    state.c = c;

    Eigen::VectorXd dv = state.dv;
    switch (opts.ft) {
      case FilterMode::none:
        break;
      case FilterMode::sensitivity:
        dc = filter.filter_sensitivities(state.x, dc);
        break;
      case FilterMode::density:
        dc = filter.chainrule_density(dc);
        dv = filter.chainrule_density(dv);
        break;
    }
    state.dc = dc;

    double vol_err = 0.0;
    oc.volume_error = &vol_err;
    const Eigen::VectorXd xnew = oc_update(state.x, dc, dv, mask, oc);
    state.max_volume_error = std::max(state.max_volume_error, vol_err);

    state.change = 0.0;
    for (int j = 0; j < nelem; ++j) {
      if (mask.tags[j] == ElementTag::active) {
        state.change = std::max(state.change, std::abs(xnew[j] - state.x[j]));
      }
    }
    state.x = xnew;
    state.xphys = physical(state.x);

    IterationRecord rec;
    rec.iter = state.loop;
    rec.compliance = state.c;
    rec.volume_fraction = state.xphys.sum() / nelem;
    rec.change = state.change;
    state.history.push_back(rec);
    if (log != nullptr) {
      char line[128];
      std::snprintf(line, sizeof(line), "it=%d obj=%.4f vol=%.3f change=%.3f",
                    rec.iter, rec.compliance, rec.volume_fraction, rec.change);
      *log << line << '\n';
    }
  }
  return state;
}

}  // namespace topohex
