#pragma once

// Small closed Δ-complexes with hand-checkable combinatorics, shared by the
// unit and acceptance tests.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "calabiflow/geometry.hpp"
#include "calabiflow/triangulation.hpp"

namespace fixtures {

using namespace calabiflow;

// Boundary of a tetrahedron: V=4, E=6, F=4, chi=2. Explicit edge ids:
// 0={0,1} 1={0,2} 2={0,3} 3={1,2} 4={1,3} 5={2,3}.
inline Triangulation tetra() {
  return Triangulation::build_from_faces(
      std::vector<std::array<int, 6>>{{0, 1, 2, 3, 1, 0},
                                      {0, 1, 3, 4, 2, 0},
                                      {0, 2, 3, 5, 2, 1},
                                      {1, 2, 3, 5, 4, 3}},
      4, 6);
}

inline PolyhedralMetric regular_tetra_metric() {
  return {GeometryKind::Euclidean, std::vector<double>(6, 1.0)};
}

// Minimal torus: one vertex, edges 0, 1 and the diagonal 2, two faces glued
// corner-to-corner. chi = 0; every edge is a loop.
inline Triangulation torus() {
  return Triangulation::build_from_faces(
      std::vector<std::array<int, 6>>{{0, 0, 0, 0, 1, 2}, {0, 0, 0, 0, 1, 2}},
      1, 3);
}

// Flat unit-square torus (diagonal sqrt 2) and its skewed, non-Delaunay
// variant (diagonal 1.6).
inline PolyhedralMetric square_torus_metric() {
  return {GeometryKind::Euclidean, {1.0, 1.0, std::sqrt(2.0)}};
}

inline PolyhedralMetric skewed_torus_metric() {
  return {GeometryKind::Euclidean, {1.0, 1.0, 1.6}};
}

// Pillow: two triangles glued along all three edges. V=3, E=3, F=2, chi=2.
// Edge e spans the two vertices other than e (edge ids match corner ids).
inline Triangulation pillow() {
  return Triangulation::build_from_faces(
      std::vector<std::array<int, 6>>{{0, 1, 2, 0, 1, 2}, {0, 1, 2, 0, 1, 2}},
      3, 3);
}

inline PolyhedralMetric pillow_metric(GeometryKind kind) {
  return {kind, std::vector<double>(3, 1.0)};
}

// A complex with a self-glued edge: face 0 uses edge 0 twice (its two v-w
// sides), face 1 uses edge 1 twice, and the loop edge 2 at v joins them.
// V=2, E=3, F=2.
inline Triangulation self_glued() {
  return Triangulation::build_from_faces(
      std::vector<std::array<int, 6>>{{0, 0, 1, 0, 0, 2}, {0, 0, 1, 1, 1, 2}},
      2, 3);
}

inline PolyhedralMetric self_glued_metric() {
  return {GeometryKind::Euclidean, {1.0, 1.0, 1.2}};
}

// n x n grid torus: every cell split along its (i,j)-(i+1,j+1) diagonal.
// Flat for lengths 1 on grid edges and sqrt 2 on diagonals. Simplicial for
// n >= 3, so the implicit builder applies.
inline Triangulation grid_torus(int n = 3) {
  std::vector<std::array<VertexId, 3>> faces;
  auto vid = [n](int i, int j) {
    return ((i % n + n) % n) * n + ((j % n + n) % n);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return Triangulation::build_from_faces(faces, n * n);
}

// Unit lengths on axis edges, sqrt 2 on diagonals, keyed by endpoints.
inline PolyhedralMetric grid_torus_metric(const Triangulation& t, int n = 3) {
  PolyhedralMetric m{GeometryKind::Euclidean,
                     std::vector<double>(t.n_edges(), 0.0)};
  for (EdgeId e = 0; e < t.n_edges(); ++e) {
    auto [a, b] = t.edge_endpoints(e);
    int di = std::abs(a / n - b / n);
    int dj = std::abs(a % n - b % n);
    if (di == n - 1) di = 1;
    if (dj == n - 1) dj = 1;
    m.lengths[e] = (di != 0 && dj != 0) ? std::sqrt(2.0) : 1.0;
  }
  return m;
}

// Triangulated unit cube as OBJ text: 8 vertices, 18 edges, 12 faces.
inline std::string cube_obj() {
  return "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
         "v 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
         "f 1 2 3\nf 1 3 4\n"   // bottom, diagonal {0,2}
         "f 5 7 6\nf 5 8 7\n"   // top, diagonal {4,6}
         "f 1 2 6\nf 1 6 5\n"   // front, diagonal {0,5}
         "f 2 3 7\nf 2 7 6\n"   // right, diagonal {1,6}
         "f 3 4 8\nf 3 8 7\n"   // back, diagonal {2,7}
         "f 4 1 5\nf 4 5 8\n";  // left, diagonal {3,4}
}

// Regular tetrahedron with unit edges in 3-space, as OBJ text.
inline std::string tetra_obj() {
  const double s = 1.0 / (2.0 * std::sqrt(2.0)); // alternate cube corners, edge 2*sqrt(2)*s
  auto row = [s](double x, double y, double z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x * s, y * s, z * s);
    return std::string(buf);
  };
  return row(1, 1, 1) + row(1, -1, -1) + row(-1, 1, -1) + row(-1, -1, 1) +
         "f 1 2 3\nf 1 2 4\nf 1 3 4\nf 2 3 4\n";
}

} // namespace fixtures
