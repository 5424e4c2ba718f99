#pragma once

#include <Eigen/Dense>

namespace topohex {

/// Modified SIMP material: E(x) = emin + x^penal * (e0 - emin).
struct MaterialModel {
  double e0 = 1.0;
  double emin = 1e-9;
  double penal = 3.0;
};

/// Stiffness matrix of the unit-modulus regular hexagon, plane stress,
/// unit thickness. DOF order follows the element-local node order
/// (bl, b, br, tr, t, tl), x before y per node.
struct ElementStiffness {
  Eigen::Matrix<double, 12, 12> k0;
};

/// Integrates B^T D B over the unit-edge regular hexagon using Wachspress
/// shape functions. The hexagon is split into six triangles from the
/// centroid; each is refined `refine` times (4-way) and integrated with a
/// degree-5 rule. Each level cuts the error by ~64x; the default is
/// converged past 1e-10 in every entry.
ElementStiffness wachspress_k0(double nu, int refine = 5);

double simp_modulus(double x, const MaterialModel& m);
double simp_dmodulus(double x, const MaterialModel& m);

}  // namespace topohex
