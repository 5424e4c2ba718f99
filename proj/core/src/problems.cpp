#include "topohex/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace topohex {

namespace {

int dof_x(int node) { return 2 * node; }
int dof_y(int node) { return 2 * node + 1; }

// Nodes with x equal to the global minimum: the straight part of the
// staggered left boundary.
std::vector<int> min_x_column(const HexMesh& mesh) {
  double minx = std::numeric_limits<double>::infinity();
  for (const auto& c : mesh.coords) minx = std::min(minx, c[0]);
  std::vector<int> out;
  for (int n = 0; n < mesh.nnode; ++n) {
    if (mesh.coords[n][0] < minx + 1e-9) out.push_back(n);
  }
  return out;
}

// Leftmost node of every zigzag row; for even hney the top row starts one
// half pitch right of the others.
std::vector<int> left_edge_nodes(const HexMesh& mesh) {
  std::vector<int> out;
  out.reserve(mesh.node_rows.size());
  for (const auto& row : mesh.node_rows) out.push_back(row.front());
  return out;
}

std::vector<int> right_edge_nodes(const HexMesh& mesh) {
  std::vector<int> out;
  out.reserve(mesh.node_rows.size());
  for (const auto& row : mesh.node_rows) out.push_back(row.back());
  return out;
}

// Node of a zigzag row at a given x, which the row-by-row construction
// guarantees to exist for the lattice positions used below.
int row_node_at_x(const HexMesh& mesh, const std::vector<int>& row, double x) {
  for (int n : row) {
    if (std::abs(mesh.coords[n][0] - x) < 1e-9) return n;
  }
  throw std::logic_error("problems: no node at the requested row position");
}

constexpr double kHalfPitch = std::numbers::sqrt3 / 2.0;

}  // namespace

Problem mbb(const HexMesh& mesh) {
  // Half-beam with the point load on the symmetry edge: unit downward force
  // at the first node (bottom of the symmetry boundary), one horizontal
  // roller per zigzag row along that boundary, and a vertical support at
  // the far top corner node on the vertex level. Validated against the
  // published benchmark compliances for all three filter modes.
  const int load_node = mesh.node_rows.front().front();
  const int support_node = row_node_at_x(mesh, mesh.node_rows.back(),
                                         (2 * mesh.hnex - 1) * kHalfPitch);

  std::vector<int> fixed;
  for (int n : left_edge_nodes(mesh)) fixed.push_back(dof_x(n));
  fixed.push_back(dof_y(support_node));

  Problem p;
  p.kind = ProblemKind::mbb;
  p.loads = make_load_set(mesh.ndof(), {{{dof_y(load_node), -1.0}}},
                          std::move(fixed));
  p.mask = PassiveMask::all_active(mesh.nelem);
  return p;
}

Problem multiload(const HexMesh& mesh, int ncases) {
  if (ncases != 2 && ncases != 4) {
    throw std::invalid_argument("problems: multiload needs 2 or 4 cases");
  }
  const auto& bottom = mesh.node_rows.front();
  const auto& top = mesh.node_rows.back();

  // Cases 1 and 2 pull on the right corners; cases 3 and 4 form a
  // vertically aligned midspan pair.
  const double midspan_x = (mesh.hnex - 1) * kHalfPitch;
  std::vector<std::vector<std::pair<int, double>>> forces = {
      {{dof_y(bottom.back()), -1.0}},
      {{dof_y(top.back()), 1.0}},
      {{dof_y(row_node_at_x(mesh, bottom, midspan_x)), 2.0}},
      {{dof_y(row_node_at_x(mesh, top, midspan_x)), -2.0}},
  };
  forces.resize(ncases);

  std::vector<int> fixed;
  for (int n : left_edge_nodes(mesh)) {
    fixed.push_back(dof_x(n));
    fixed.push_back(dof_y(n));
  }

  Problem p;
  p.kind = ncases == 2 ? ProblemKind::multiload2 : ProblemKind::multiload4;
  p.loads = make_load_set(mesh.ndof(), std::move(forces), std::move(fixed));
  p.mask = PassiveMask::all_active(mesh.nelem);
  return p;
}

Problem passive_problem(const HexMesh& mesh) {
  const int load_node = mesh.node_rows.front().back();

  std::vector<int> fixed;
  for (int n : left_edge_nodes(mesh)) {
    fixed.push_back(dof_x(n));
    fixed.push_back(dof_y(n));
  }

  double max_cx = 0.0, max_cy = 0.0;
  for (const auto& c : mesh.centroids) {
    max_cx = std::max(max_cx, c[0]);
    max_cy = std::max(max_cy, c[1]);
  }

  PassiveMask mask = PassiveMask::all_active(mesh.nelem);
  for (int j = 0; j < mesh.nelem; ++j) {
    const double x = mesh.centroids[j][0];
    const double y = mesh.centroids[j][1];
    const double dx = x - max_cx / 3.0;
    const double dy = y - max_cy / 2.0;
    if (std::sqrt(dx * dx + dy * dy) < max_cy / 3.0) {
      mask.tags[j] = ElementTag::passive_void;
    } else if (x > 0.7 * max_cx && x < 0.9 * max_cx && y > 0.1 * max_cy &&
               y < 0.3 * max_cy) {
      mask.tags[j] = ElementTag::solid;
    }
  }

  Problem p;
  p.kind = ProblemKind::passive;
  p.loads = make_load_set(mesh.ndof(), {{{dof_y(load_node), -1.0}}},
                          std::move(fixed));
  p.mask = std::move(mask);
  return p;
}

Problem custom_problem(const HexMesh& mesh, const CustomProblemSpec& spec) {
  if (spec.loads.empty()) {
    throw std::invalid_argument("problems: custom problem has no loads");
  }
  int ncases = 0;
  for (const auto& l : spec.loads) ncases = std::max(ncases, l.load_case);
  if (ncases < 1) {
    throw std::invalid_argument("problems: custom load case must be >= 1");
  }

  std::vector<std::vector<std::pair<int, double>>> forces(ncases);
  for (const auto& l : spec.loads) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int n = 0; n < mesh.nnode; ++n) {
      const double dx = mesh.coords[n][0] - l.x;
      const double dy = mesh.coords[n][1] - l.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = n;
      }
    }
    if (best_d2 > 1.0) {
      throw std::invalid_argument(
          "problems: custom load point is more than one edge length from "
          "any node");
    }
    if (l.dir != 'x' && l.dir != 'y') {
      throw std::invalid_argument("problems: custom load dir must be x or y");
    }
    const int dof = (l.dir == 'x') ? dof_x(best) : dof_y(best);
    forces[l.load_case - 1].push_back({dof, l.mag});
  }

  std::vector<int> fixed;
  for (const auto& clamp : spec.clamps) {
    std::vector<int> nodes;
    switch (clamp.edge) {
      case DomainEdge::left:
        nodes = left_edge_nodes(mesh);
        break;
      case DomainEdge::right:
        nodes = right_edge_nodes(mesh);
        break;
      case DomainEdge::bottom:
        nodes = mesh.node_rows.front();
        break;
      case DomainEdge::top:
        nodes = mesh.node_rows.back();
        break;
    }
    for (int n : nodes) {
      if (clamp.fix_x) fixed.push_back(dof_x(n));
      if (clamp.fix_y) fixed.push_back(dof_y(n));
    }
  }
  if (fixed.empty()) {
    throw std::invalid_argument("problems: custom problem has no clamps");
  }

  PassiveMask mask = PassiveMask::all_active(mesh.nelem);
  for (int j = 0; j < mesh.nelem; ++j) {
    const double x = mesh.centroids[j][0];
    const double y = mesh.centroids[j][1];
    for (const auto& c : spec.void_circles) {
      const double dx = x - c.cx, dy = y - c.cy;
      if (std::sqrt(dx * dx + dy * dy) < c.r) {
        mask.tags[j] = ElementTag::passive_void;
      }
    }
    for (const auto& b : spec.solid_boxes) {
      if (x > b.x0 && x < b.x1 && y > b.y0 && y < b.y1) {
        if (mask.tags[j] == ElementTag::passive_void) {
          throw std::invalid_argument(
              "problems: custom solid and void regions overlap");
        }
        mask.tags[j] = ElementTag::solid;
      }
    }
  }

  Problem p;
  p.kind = ProblemKind::custom;
  p.loads = make_load_set(mesh.ndof(), std::move(forces), std::move(fixed));
  p.mask = std::move(mask);
  return p;
}

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "mbb") return ProblemKind::mbb;
  if (name == "multiload2") return ProblemKind::multiload2;
  if (name == "multiload4") return ProblemKind::multiload4;
  if (name == "passive") return ProblemKind::passive;
  if (name == "custom") return ProblemKind::custom;
  throw std::invalid_argument("problems: unknown problem '" + name + "'");
}

}  // namespace topohex
