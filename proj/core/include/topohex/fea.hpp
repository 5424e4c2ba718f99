#pragma once

#include <Eigen/Sparse>
#include <string>
#include <utility>
#include <vector>

#include "topohex/element.hpp"
#include "topohex/mesh.hpp"

namespace topohex {

/// Point loads and supports for a problem instance. Forces are sparse,
/// one vector per load case; fixed_dofs and free_dofs partition 0..ndof-1.
struct LoadSet {
  int ndof = 0;
  std::vector<std::vector<std::pair<int, double>>> forces;
  std::vector<int> fixed_dofs;
  std::vector<int> free_dofs;

  Eigen::VectorXd dense_force(int load_case) const;
};

/// Validates entries, sorts/uniques fixed DOFs and fills the complement.
LoadSet make_load_set(int ndof,
                      std::vector<std::vector<std::pair<int, double>>> forces,
                      std::vector<int> fixed_dofs);

struct SolveResult {
  /// Displacements per load case, zeros at fixed DOFs.
  std::vector<Eigen::VectorXd> u;
  /// Per-case unit-modulus element energies ce_j = u_j^T k0 u_j.
  std::vector<Eigen::VectorXd> element_energies;
};

/// Global stiffness K = sum_j E(xphys_j) * scatter(k0, dofs[j]),
/// assembled from triplets.
Eigen::SparseMatrix<double> assemble(const HexMesh& mesh,
                                     const Eigen::VectorXd& xphys,
                                     const MaterialModel& m,
                                     const ElementStiffness& ke);

/// Solves K u = F on the free DOFs for every load case (sparse Cholesky)
/// and evaluates the element energies. Relative residual per case is
/// checked against 1e-8; a singular or indefinite reduced system raises
/// an "insufficient constraints" error.
SolveResult solve(const Eigen::SparseMatrix<double>& k, const LoadSet& loads,
                  const HexMesh& mesh, const ElementStiffness& ke);

/// ce_j = gather(u, dofs[j])^T k0 gather(u, dofs[j]).
Eigen::VectorXd element_energies(const HexMesh& mesh,
                                 const ElementStiffness& ke,
                                 const Eigen::VectorXd& u);

/// Coordinate-format (row, col, value) dump, for debugging.
void write_matrix_coo(const Eigen::SparseMatrix<double>& k,
                      const std::string& path);

}  // namespace topohex
