#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "topohex/mesh.hpp"

using topohex::HexMesh;
using topohex::MeshSpec;
using topohex::build_mesh;

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

std::map<int, int> node_valence(const HexMesh& mesh) {
  std::map<int, int> valence;
  for (const auto& elem : mesh.conn) {
    for (int n : elem) ++valence[n];
  }
  return valence;
}

}  // namespace

TEST_CASE("build_mesh rejects non-positive sizes") {
  CHECK_THROWS_AS(build_mesh({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh({-2, 3}), std::invalid_argument);
}

TEST_CASE("single hexagon") {
  const HexMesh mesh = build_mesh({1, 1});
  CHECK(mesh.nelem == 1);
  CHECK(mesh.nnode == 6);

  // Anticlockwise perimeter starting at the bottom-left vertex; the cell is
  // centered at (0, 1).
  const double s = kSqrt3 / 2.0;
  const std::array<std::array<double, 2>, 6> expected = {{
      {-s, 0.5}, {0.0, 0.0}, {s, 0.5}, {s, 1.5}, {0.0, 2.0}, {-s, 1.5},
  }};
  for (int i = 0; i < 6; ++i) {
    const auto& c = mesh.coords[mesh.conn[0][i]];
    CHECK(c[0] == doctest::Approx(expected[i][0]).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(expected[i][1]).epsilon(1e-12));
  }
  // 0-based DOF table interleaves x and y per node in conn order.
  for (int i = 0; i < 6; ++i) {
    CHECK(mesh.dofs[0][2 * i] == 2 * mesh.conn[0][i]);
    CHECK(mesh.dofs[0][2 * i + 1] == 2 * mesh.conn[0][i] + 1);
  }
}

TEST_CASE("2x2 mesh matches the vertex-merge oracle") {
  const HexMesh mesh = build_mesh({2, 2});
  const auto brute = oracle::brute_mesh(2, 2);
  CHECK(mesh.nelem == 4);
  CHECK(mesh.nnode == 16);  // frozen from the vertex-merge oracle
  CHECK(static_cast<int>(brute.coords.size()) == mesh.nnode);

  // Shared-node pattern: counts of nodes per valence match the oracle.
  const auto val = node_valence(mesh);
  std::map<int, int> histogram, brute_histogram;
  for (const auto& [node, v] : val) ++histogram[v];
  std::map<int, int> brute_val;
  for (const auto& elem : brute.conn) {
    for (int n : elem) ++brute_val[n];
  }
  for (const auto& [node, v] : brute_val) ++brute_histogram[v];
  CHECK(histogram == brute_histogram);
}

TEST_CASE("oracle equivalence for all domain sizes up to 6x6") {
  for (int hnex = 1; hnex <= 6; ++hnex) {
    for (int hney = 1; hney <= 6; ++hney) {
      CAPTURE(hnex);
      CAPTURE(hney);
      const HexMesh mesh = build_mesh({hnex, hney});
      const auto brute = oracle::brute_mesh(hnex, hney);

      REQUIRE(mesh.nelem == hnex * hney);
      REQUIRE(static_cast<int>(brute.coords.size()) == mesh.nnode);

      std::vector<oracle::Point> mesh_pts(mesh.coords.begin(),
                                          mesh.coords.end());
      std::vector<oracle::Point> brute_pts(brute.coords.begin(),
                                           brute.coords.end());
      CHECK(oracle::sorted_points(mesh_pts) == oracle::sorted_points(brute_pts));
      CHECK(oracle::sorted_edges(mesh) == oracle::sorted_edges(brute));
      CHECK(oracle::sorted_element_vertex_sets(mesh) ==
            oracle::sorted_element_vertex_sets(brute));
    }
  }
}

TEST_CASE("edge connectivity: sharing elements share exactly two nodes") {
  for (const auto spec : {MeshSpec{3, 3}, MeshSpec{4, 2}, MeshSpec{2, 5}}) {
    const HexMesh mesh = build_mesh(spec);
    for (int e1 = 0; e1 < mesh.nelem; ++e1) {
      for (int e2 = e1 + 1; e2 < mesh.nelem; ++e2) {
        std::set<int> a(mesh.conn[e1].begin(), mesh.conn[e1].end());
        int shared = 0;
        for (int n : mesh.conn[e2]) shared += a.count(n);
        CAPTURE(e1);
        CAPTURE(e2);
        CHECK((shared == 0 || shared == 2));
      }
    }
  }
}

TEST_CASE("node valence lies in [1, 3] and indices are compact") {
  for (const auto spec : {MeshSpec{3, 4}, MeshSpec{5, 2}, MeshSpec{1, 6}}) {
    const HexMesh mesh = build_mesh(spec);
    const auto valence = node_valence(mesh);
    // Every node referenced at least once: compact indexing, no hanging nodes.
    CHECK(static_cast<int>(valence.size()) == mesh.nnode);
    CHECK(valence.begin()->first == 0);
    CHECK(valence.rbegin()->first == mesh.nnode - 1);
    for (const auto& [node, v] : valence) {
      CHECK(v >= 1);
      CHECK(v <= 3);
    }
    int max_dof = 0;
    for (const auto& ed : mesh.dofs) {
      max_dof = std::max(max_dof, *std::max_element(ed.begin(), ed.end()));
    }
    CHECK(max_dof == 2 * mesh.nnode - 1);
  }
}

TEST_CASE("every element has six distinct nodes and twelve distinct dofs") {
  const HexMesh mesh = build_mesh({4, 3});
  for (int e = 0; e < mesh.nelem; ++e) {
    std::set<int> nodes(mesh.conn[e].begin(), mesh.conn[e].end());
    std::set<int> dofs(mesh.dofs[e].begin(), mesh.dofs[e].end());
    CHECK(nodes.size() == 6);
    CHECK(dofs.size() == 12);
  }
}

TEST_CASE("60x20 benchmark extents") {
  const HexMesh mesh = build_mesh({60, 20});
  CHECK(mesh.nelem == 1200);
  double minx = mesh.coords[0][0], maxx = minx;
  for (const auto& c : mesh.coords) {
    minx = std::min(minx, c[0]);
    maxx = std::max(maxx, c[0]);
  }
  // Width is 60*sqrt(3) up to the half-pitch boundary stagger.
  CHECK(std::abs((maxx - minx) - 60.0 * kSqrt3) <= kSqrt3 / 2.0 + 1e-12);
}

TEST_CASE("centroids equal the mean of node coordinates") {
  const HexMesh mesh = build_mesh({3, 3});
  const auto c = centroids(mesh);
  REQUIRE(static_cast<int>(c.size()) == mesh.nelem);
  for (int e = 0; e < mesh.nelem; ++e) {
    CHECK(c[e][0] == doctest::Approx(mesh.centroids[e][0]).epsilon(1e-14));
    CHECK(c[e][1] == doctest::Approx(mesh.centroids[e][1]).epsilon(1e-14));
  }

  // All centroids lie strictly inside the coordinate bounding box.
  double minx = mesh.coords[0][0], maxx = minx;
  double miny = mesh.coords[0][1], maxy = miny;
  for (const auto& p : mesh.coords) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  for (const auto& p : c) {
    CHECK(p[0] > minx);
    CHECK(p[0] < maxx);
    CHECK(p[1] > miny);
    CHECK(p[1] < maxy);
  }
}

TEST_CASE("centroid of a hexagon centered at the origin is the origin") {
  HexMesh mesh;
  mesh.hnex = mesh.hney = 1;
  mesh.nelem = 1;
  mesh.nnode = 6;
  const double s = kSqrt3 / 2.0;
  mesh.coords = {{-s, -0.5}, {0.0, -1.0}, {s, -0.5},
                 {s, 0.5},   {0.0, 1.0},  {-s, 0.5}};
  mesh.conn = {{0, 1, 2, 3, 4, 5}};
  const auto c = centroids(mesh);
  CHECK(c[0][0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c[0][1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("centroid x-spacing of a 2x1 mesh is sqrt(3)") {
  const HexMesh mesh = build_mesh({2, 1});
  CHECK(mesh.centroids[1][0] - mesh.centroids[0][0] ==
        doctest::Approx(kSqrt3).epsilon(1e-14));
  CHECK(mesh.centroids[1][1] == doctest::Approx(mesh.centroids[0][1]));
}

TEST_CASE("mesh CSV dump has both sections with 1-based ids") {
  const HexMesh mesh = build_mesh({2, 2});
  const std::string path = "mesh_dump_test.csv";
  topohex::write_mesh_csv(mesh, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "nodes: id,x,y");
  int node_rows = 0;
  while (std::getline(in, line) && line.rfind("elements:", 0) != 0) {
    ++node_rows;
  }
  CHECK(node_rows == mesh.nnode);
  CHECK(line == "elements: id,n1,n2,n3,n4,n5,n6");
  int elem_rows = 0;
  int first_id = -1;
  while (std::getline(in, line)) {
    if (elem_rows == 0) first_id = std::stoi(line.substr(0, line.find(',')));
    ++elem_rows;
  }
  CHECK(elem_rows == mesh.nelem);
  CHECK(first_id == 1);
  std::remove(path.c_str());
}
