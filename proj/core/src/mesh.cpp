#include "topohex/mesh.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace topohex {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Lattice position k in a zigzag row maps to x = (k-1)*sqrt(3)/2, so k = 0
// is the far-left column at x = -sqrt(3)/2. Odd element rows occupy
// positions 0..2*hnex of their two zigzag rows, even rows 1..2*hnex+1.
double position_x(int k) { return (k - 1) * (kSqrt3 / 2.0); }

// Zigzag row j (1-based) holds nodes on levels 1.5*(j-1) and 1.5*(j-1)+0.5;
// position k sits on the upper level when j+k is odd.
double position_y(int j, int k) {
  return 1.5 * (j - 1) + (((j + k) % 2 != 0) ? 0.5 : 0.0);
}

}  // namespace

HexMesh build_mesh(const MeshSpec& spec) {
  if (spec.hnex < 1 || spec.hney < 1) {
    throw std::invalid_argument("mesh: hnex and hney must be at least 1");
  }
  const int hnex = spec.hnex;
  const int hney = spec.hney;

  HexMesh mesh;
  mesh.hnex = hnex;
  mesh.hney = hney;
  mesh.nelem = hnex * hney;

  // Node lattice, row by row from the bottom. Row j spans positions
  // kmin..kmax; the union of the element rows touching it decides the range.
  const int nrows = hney + 1;
  std::vector<int> kmin(nrows + 1), kmax(nrows + 1);
  for (int j = 1; j <= nrows; ++j) {
    const bool below_even = (j - 1 >= 1) && ((j - 1) % 2 == 0);
    const bool above_even = (j <= hney) && (j % 2 == 0);
    const bool below_odd = (j - 1 >= 1) && ((j - 1) % 2 == 1);
    const bool above_odd = (j <= hney) && (j % 2 == 1);
    kmin[j] = (below_odd || above_odd) ? 0 : 1;
    kmax[j] = (below_even || above_even) ? 2 * hnex + 1 : 2 * hnex;
  }

  // node_id[j][k - kmin[j]] after filling; rows are ascending in x already.
  std::vector<std::vector<int>> row_ids(nrows + 1);
  mesh.node_rows.resize(nrows);
  int next = 0;
  for (int j = 1; j <= nrows; ++j) {
    row_ids[j].resize(kmax[j] - kmin[j] + 1);
    for (int k = kmin[j]; k <= kmax[j]; ++k) {
      row_ids[j][k - kmin[j]] = next;
      mesh.coords.push_back({position_x(k), position_y(j, k)});
      mesh.node_rows[j - 1].push_back(next);
      ++next;
    }
  }
  mesh.nnode = next;

  auto node_at = [&](int j, int k) { return row_ids[j][k - kmin[j]]; };

  // Elements, row by row from the bottom, left to right. Element (r, c)
  // spans zigzag rows r and r+1; even rows start one lattice position right.
  mesh.conn.reserve(mesh.nelem);
  mesh.dofs.reserve(mesh.nelem);
  mesh.centroids.reserve(mesh.nelem);
  for (int r = 1; r <= hney; ++r) {
    const int shift = (r % 2 == 0) ? 1 : 0;
    for (int c = 1; c <= hnex; ++c) {
      const int k0 = 2 * (c - 1) + shift;
      const std::array<int, 6> nodes = {
          node_at(r, k0),     node_at(r, k0 + 1),     node_at(r, k0 + 2),
          node_at(r + 1, k0 + 2), node_at(r + 1, k0 + 1), node_at(r + 1, k0)};
      std::array<int, 12> edofs{};
      double cx = 0.0, cy = 0.0;
      for (int i = 0; i < 6; ++i) {
        edofs[2 * i] = 2 * nodes[i];
        edofs[2 * i + 1] = 2 * nodes[i] + 1;
        cx += mesh.coords[nodes[i]][0];
        cy += mesh.coords[nodes[i]][1];
      }
      mesh.conn.push_back(nodes);
      mesh.dofs.push_back(edofs);
      mesh.centroids.push_back({cx / 6.0, cy / 6.0});
    }
  }
  return mesh;
}

std::vector<std::array<double, 2>> centroids(const HexMesh& mesh) {
  std::vector<std::array<double, 2>> out;
  out.reserve(mesh.conn.size());
  for (const auto& nodes : mesh.conn) {
    double cx = 0.0, cy = 0.0;
    for (int n : nodes) {
      cx += mesh.coords[n][0];
      cy += mesh.coords[n][1];
    }
    out.push_back({cx / 6.0, cy / 6.0});
  }
  return out;
}

void write_mesh_csv(const HexMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("mesh: cannot open '" + path + "' for writing");
  }
  out.precision(17);
  out << "nodes: id,x,y\n";
  for (int n = 0; n < mesh.nnode; ++n) {
    out << n + 1 << ',' << mesh.coords[n][0] << ',' << mesh.coords[n][1]
        << '\n';
  }
  out << "elements: id,n1,n2,n3,n4,n5,n6\n";
  for (int e = 0; e < mesh.nelem; ++e) {
    out << e + 1;
    for (int n : mesh.conn[e]) out << ',' << n + 1;
    out << '\n';
  }
  if (!out.good()) {
    throw std::runtime_error("mesh: write to '" + path + "' failed");
  }
}

}  // namespace topohex
