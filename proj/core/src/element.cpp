#include "topohex/element.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace topohex {

namespace {

using Vec2 = Eigen::Vector2d;
using Mat12 = Eigen::Matrix<double, 12, 12>;

// Vertices of the reference hexagon, centered at the origin, edge length 1,
// in element-local order bl, b, br, tr, t, tl (anticlockwise).
std::array<Vec2, 6> reference_hexagon() {
  constexpr double s = std::numbers::sqrt3 / 2.0;
  return {Vec2(-s, -0.5), Vec2(0.0, -1.0), Vec2(s, -0.5),
          Vec2(s, 0.5),   Vec2(0.0, 1.0),  Vec2(-s, 0.5)};
}

double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (b.y() - a.y()) * (c.x() - a.x()));
}

// Wachspress basis gradients at an interior point p. With
// w_i = C_i / (A_{i-1} A_i), A_i the area of (v_i, v_{i+1}, p), the
// gradient is grad(phi_i) = phi_i (sum_j phi_j S_j - S_i) where
// S_i = grad(A_{i-1})/A_{i-1} + grad(A_i)/A_i.
void wachspress_gradients(const std::array<Vec2, 6>& v, const Vec2& p,
                          std::array<Vec2, 6>& grad) {
  std::array<double, 6> area;
  std::array<Vec2, 6> darea;
  for (int i = 0; i < 6; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % 6];
    area[i] = tri_area(a, b, p);
    darea[i] = 0.5 * Vec2(-(b.y() - a.y()), b.x() - a.x());
  }
  std::array<double, 6> w;
  std::array<Vec2, 6> s;
  double wsum = 0.0;
  for (int i = 0; i < 6; ++i) {
    const int prev = (i + 5) % 6;
    const double c = tri_area(v[prev], v[i], v[(i + 1) % 6]);
    w[i] = c / (area[prev] * area[i]);
    s[i] = darea[prev] / area[prev] + darea[i] / area[i];
    wsum += w[i];
  }
  Vec2 smean = Vec2::Zero();
  for (int i = 0; i < 6; ++i) smean += (w[i] / wsum) * s[i];
  for (int i = 0; i < 6; ++i) grad[i] = (w[i] / wsum) * (smean - s[i]);
}

void accumulate(const std::array<Vec2, 6>& v, const Eigen::Matrix3d& d,
                const Vec2& p, double weight, Mat12& k) {
  std::array<Vec2, 6> grad;
  wachspress_gradients(v, p, grad);
  Eigen::Matrix<double, 3, 12> b = Eigen::Matrix<double, 3, 12>::Zero();
  for (int i = 0; i < 6; ++i) {
    b(0, 2 * i) = grad[i].x();
    b(1, 2 * i + 1) = grad[i].y();
    b(2, 2 * i) = grad[i].y();
    b(2, 2 * i + 1) = grad[i].x();
  }
  k.noalias() += weight * (b.transpose() * d * b);
}

// Degree-5 rule on a triangle (7 points, positive weights), applied after
// `level` rounds of 4-way midpoint refinement.
void integrate_triangle(const std::array<Vec2, 6>& v, const Eigen::Matrix3d& d,
                        const Vec2& p0, const Vec2& p1, const Vec2& p2,
                        int level, Mat12& k) {
  if (level > 0) {
    const Vec2 m01 = 0.5 * (p0 + p1);
    const Vec2 m12 = 0.5 * (p1 + p2);
    const Vec2 m20 = 0.5 * (p2 + p0);
    integrate_triangle(v, d, p0, m01, m20, level - 1, k);
    integrate_triangle(v, d, m01, p1, m12, level - 1, k);
    integrate_triangle(v, d, m20, m12, p2, level - 1, k);
    integrate_triangle(v, d, m01, m12, m20, level - 1, k);
    return;
  }
  const double sqrt15 = std::sqrt(15.0);
  const double b1 = (6.0 - sqrt15) / 21.0;
  const double b2 = (6.0 + sqrt15) / 21.0;
  const double w0 = 9.0 / 40.0;
  const double w1 = (155.0 - sqrt15) / 1200.0;
  const double w2 = (155.0 + sqrt15) / 1200.0;
  const double bary[7][4] = {
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w0},
      {1.0 - 2.0 * b1, b1, b1, w1},
      {b1, 1.0 - 2.0 * b1, b1, w1},
      {b1, b1, 1.0 - 2.0 * b1, w1},
      {1.0 - 2.0 * b2, b2, b2, w2},
      {b2, 1.0 - 2.0 * b2, b2, w2},
      {b2, b2, 1.0 - 2.0 * b2, w2},
  };
  const double area = tri_area(p0, p1, p2);
  for (const auto& q : bary) {
    const Vec2 p = q[0] * p0 + q[1] * p1 + q[2] * p2;
    accumulate(v, d, p, q[3] * area, k);
  }
}

}  // namespace

ElementStiffness wachspress_k0(double nu, int refine) {
  if (!(nu >= 0.0 && nu < 0.5)) {
    throw std::invalid_argument("element: nu must lie in [0, 0.5)");
  }
  if (refine < 0) {
    throw std::invalid_argument("element: refine must be nonnegative");
  }
  Eigen::Matrix3d d;
  d << 1.0, nu, 0.0, nu, 1.0, 0.0, 0.0, 0.0, (1.0 - nu) / 2.0;
  d *= 1.0 / (1.0 - nu * nu);

  const auto v = reference_hexagon();
  Mat12 k = Mat12::Zero();
  const Vec2 center = Vec2::Zero();
  for (int i = 0; i < 6; ++i) {
    integrate_triangle(v, d, center, v[i], v[(i + 1) % 6], refine, k);
  }
  ElementStiffness out;
  out.k0 = 0.5 * (k + k.transpose());
  return out;
}

double simp_modulus(double x, const MaterialModel& m) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    throw std::invalid_argument("element: density outside [0, 1]");
  }
  const double xc = std::clamp(x, 0.0, 1.0);
  return m.emin + std::pow(xc, m.penal) * (m.e0 - m.emin);
}

double simp_dmodulus(double x, const MaterialModel& m) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    throw std::invalid_argument("element: density outside [0, 1]");
  }
  const double xc = std::clamp(x, 0.0, 1.0);
  return m.penal * (m.e0 - m.emin) * std::pow(xc, m.penal - 1.0);
}

}  // namespace topohex
