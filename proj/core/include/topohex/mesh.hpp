#pragma once

#include <array>
#include <string>
#include <vector>

namespace topohex {

/// Size of a honeycomb design domain: hexagon counts along x and y.
struct MeshSpec {
  int hnex = 1;
  int hney = 1;
};

/// Honeycomb tessellation of a rectangular design domain.
///
/// Geometry conventions (fixed once, everything downstream relies on them):
///  - regular hexagons with edge length 1, vertex-up orientation
///    (each cell has two vertical edges),
///  - horizontal center pitch sqrt(3), vertical center pitch 3/2,
///  - element rows are numbered 1..hney from the bottom; even rows are
///    shifted +sqrt(3)/2 in x,
///  - nodes live on hney+1 zigzag rows; they are numbered row by row from
///    the bottom, left to right within a row. For even hney the top row has
///    no node at the far left (it would belong to no element), so indices
///    are contiguous by construction.
///
/// Element-local node order is anticlockwise starting at the bottom-left
/// vertex: bl, b, br, tr, t, tl. The element stiffness matrix uses the same
/// order; a cross-module rigid-body test pins the convention.
///
/// Indices are 0-based in memory. File interfaces report 1-based ids.
struct HexMesh {
  int hnex = 0;
  int hney = 0;
  int nelem = 0;
  int nnode = 0;

  /// Per-element node indices, anticlockwise from the bottom-left vertex.
  std::vector<std::array<int, 6>> conn;
  /// Per-element DOF indices: (2n, 2n+1) for each node n, in conn order.
  std::vector<std::array<int, 12>> dofs;
  /// Per-node coordinates in edge-length units.
  std::vector<std::array<double, 2>> coords;
  /// Per-element centroid, the mean of the six vertex coordinates.
  std::vector<std::array<double, 2>> centroids;
  /// Node indices of each zigzag row, bottom row first, ascending x.
  std::vector<std::vector<int>> node_rows;

  int ndof() const { return 2 * nnode; }
};

/// Builds the honeycomb tessellation for the given domain size.
/// Throws std::invalid_argument for non-positive counts.
HexMesh build_mesh(const MeshSpec& spec);

/// Per-element centroids (mean of the six node coordinates).
std::vector<std::array<double, 2>> centroids(const HexMesh& mesh);

/// Writes the mesh as CSV with `nodes: id,x,y` and `elements: id,n1..n6`
/// sections. Ids are 1-based.
void write_mesh_csv(const HexMesh& mesh, const std::string& path);

}  // namespace topohex
