#include "topohex/fea.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace topohex {

Eigen::VectorXd LoadSet::dense_force(int load_case) const {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(ndof);
  for (const auto& [dof, value] : forces.at(load_case)) f[dof] += value;
  return f;
}

LoadSet make_load_set(int ndof,
                      std::vector<std::vector<std::pair<int, double>>> forces,
                      std::vector<int> fixed_dofs) {
  if (ndof <= 0) throw std::invalid_argument("fea: ndof must be positive");
  if (forces.empty()) {
    throw std::invalid_argument("fea: at least one load case required");
  }
  for (const auto& f : forces) {
    bool nonzero = false;
    for (const auto& [dof, value] : f) {
      if (dof < 0 || dof >= ndof) {
        throw std::invalid_argument("fea: force DOF out of range");
      }
      if (!std::isfinite(value)) {
        throw std::invalid_argument("fea: force value not finite");
      }
      nonzero = nonzero || value != 0.0;
    }
    if (!nonzero) {
      throw std::invalid_argument("fea: load case has no nonzero entry");
    }
  }
  std::sort(fixed_dofs.begin(), fixed_dofs.end());
  fixed_dofs.erase(std::unique(fixed_dofs.begin(), fixed_dofs.end()),
                   fixed_dofs.end());
  if (!fixed_dofs.empty() &&
      (fixed_dofs.front() < 0 || fixed_dofs.back() >= ndof)) {
    throw std::invalid_argument("fea: fixed DOF out of range");
  }

  LoadSet out;
  out.ndof = ndof;
  out.forces = std::move(forces);
  out.fixed_dofs = std::move(fixed_dofs);
  out.free_dofs.reserve(ndof - out.fixed_dofs.size());
  std::size_t i = 0;
  for (int d = 0; d < ndof; ++d) {
    if (i < out.fixed_dofs.size() && out.fixed_dofs[i] == d) {
      ++i;
    } else {
      out.free_dofs.push_back(d);
    }
  }
  return out;
}

Eigen::SparseMatrix<double> assemble(const HexMesh& mesh,
                                     const Eigen::VectorXd& xphys,
                                     const MaterialModel& m,
                                     const ElementStiffness& ke) {
  if (xphys.size() != mesh.nelem) {
    throw std::invalid_argument("fea: density vector size mismatch");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.nelem) * 144);
  for (int e = 0; e < mesh.nelem; ++e) {
    const double scale = simp_modulus(xphys[e], m);
    const auto& ed = mesh.dofs[e];
    for (int a = 0; a < 12; ++a) {
      for (int b = 0; b < 12; ++b) {
        triplets.emplace_back(ed[a], ed[b], scale * ke.k0(a, b));
      }
    }
  }
  Eigen::SparseMatrix<double> k(mesh.ndof(), mesh.ndof());
  k.setFromTriplets(triplets.begin(), triplets.end());
  return k;
}

SolveResult solve(const Eigen::SparseMatrix<double>& k, const LoadSet& loads,
                  const HexMesh& mesh, const ElementStiffness& ke) {
  const int ndof = loads.ndof;
  if (k.rows() != ndof || k.cols() != ndof) {
    throw std::invalid_argument("fea: matrix/load dimension mismatch");
  }
  const int nfree = static_cast<int>(loads.free_dofs.size());
  std::vector<int> to_free(ndof, -1);
  for (int i = 0; i < nfree; ++i) to_free[loads.free_dofs[i]] = i;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(k.nonZeros());
  for (int col = 0; col < k.outerSize(); ++col) {
    const int jc = to_free[col];
    if (jc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      const int jr = to_free[it.row()];
      if (jr >= 0) triplets.emplace_back(jr, jc, it.value());
    }
  }
  Eigen::SparseMatrix<double> kff(nfree, nfree);
  kff.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(kff);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 0.0) {
    throw std::runtime_error(
        "fea: insufficient constraints (reduced system not positive "
        "definite)");
  }

  SolveResult out;
  for (std::size_t c = 0; c < loads.forces.size(); ++c) {
    const Eigen::VectorXd f = loads.dense_force(static_cast<int>(c));
    Eigen::VectorXd ff(nfree);
    for (int i = 0; i < nfree; ++i) ff[i] = f[loads.free_dofs[i]];

    const Eigen::VectorXd uf = ldlt.solve(ff);
    const double fnorm = ff.norm();
    const double residual = (kff * uf - ff).norm();
    if (!uf.allFinite() || (fnorm > 0.0 && residual > 1e-8 * fnorm)) {
      throw std::runtime_error(
          "fea: solver residual exceeds tolerance (insufficient "
          "constraints?)");
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(ndof);
    for (int i = 0; i < nfree; ++i) u[loads.free_dofs[i]] = uf[i];
    out.element_energies.push_back(element_energies(mesh, ke, u));
    out.u.push_back(std::move(u));
  }
  return out;
}

Eigen::VectorXd element_energies(const HexMesh& mesh,
                                 const ElementStiffness& ke,
                                 const Eigen::VectorXd& u) {
  if (u.size() != mesh.ndof()) {
    throw std::invalid_argument("fea: displacement vector size mismatch");
  }
  Eigen::VectorXd ce(mesh.nelem);
  Eigen::Matrix<double, 12, 1> ue;
  for (int e = 0; e < mesh.nelem; ++e) {
    const auto& ed = mesh.dofs[e];
    for (int i = 0; i < 12; ++i) ue[i] = u[ed[i]];
    ce[e] = ue.dot(ke.k0 * ue);
  }
  return ce;
}

void write_matrix_coo(const Eigen::SparseMatrix<double>& k,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("fea: cannot open '" + path + "' for writing");
  }
  out.precision(17);
  for (int col = 0; col < k.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace topohex
