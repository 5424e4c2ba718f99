#pragma once

#include <string>
#include <vector>

#include "topohex/fea.hpp"
#include "topohex/mesh.hpp"
#include "topohex/optimizer.hpp"

namespace topohex {

enum class ProblemKind { mbb, multiload2, multiload4, passive, custom };

struct Problem {
  ProblemKind kind = ProblemKind::mbb;
  LoadSet loads;
  PassiveMask mask;
};

/// Half MBB beam: unit downward load on the top-left boundary node,
/// horizontal rollers on the symmetry (min-x) column, vertical support at
/// the bottom-right node.
Problem mbb(const HexMesh& mesh);

/// Cantilever with 2 or 4 load cases. The left boundary is clamped via the
/// leftmost node of every zigzag row. Cases, in order: -1 down at the
/// bottom-right node, +1 up at the top-right node, +2 at the bottom
/// midspan node, -2 at the top midspan node.
Problem multiload(const HexMesh& mesh, int ncases);

/// Cantilever with a circular non-design void and a rectangular non-design
/// solid region, located from the centroid extents; unit downward load on
/// the rightmost node of the bottom row.
Problem passive_problem(const HexMesh& mesh);

/// User-defined problem primitives, typically read from a config file.
struct CustomLoad {
  double x = 0.0;
  double y = 0.0;
  char dir = 'y';
  double mag = -1.0;
  int load_case = 1;  // 1-based
};

enum class DomainEdge { left, right, bottom, top };

struct CustomClamp {
  DomainEdge edge = DomainEdge::left;
  bool fix_x = true;
  bool fix_y = true;
};

struct CircleRegion {
  double cx = 0.0, cy = 0.0, r = 0.0;
};

struct BoxRegion {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct CustomProblemSpec {
  std::vector<CustomLoad> loads;
  std::vector<CustomClamp> clamps;
  std::vector<CircleRegion> void_circles;
  std::vector<BoxRegion> solid_boxes;
};

Problem custom_problem(const HexMesh& mesh, const CustomProblemSpec& spec);

ProblemKind parse_problem_kind(const std::string& name);

}  // namespace topohex
