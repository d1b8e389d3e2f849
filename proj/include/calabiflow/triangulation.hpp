#pragma once

#include <array>
#include <utility>
#include <vector>

#include "calabiflow/error.hpp"

namespace calabiflow {

// Dense 0-based identifiers. Ids are stable across flips except that the
// flipped edge's two incident faces have their corner tables rewritten.
using VertexId = int;
using EdgeId = int;
using FaceId = int;

// One corner of a face: the vertex sitting at the corner and the edge
// opposite it (the side spanned by the face's other two corners).
struct Corner {
  VertexId vertex = -1;
  EdgeId opposite_edge = -1;
};

struct Face {
  std::array<Corner, 3> corners;
};

// One of the two sides of an edge: the face containing it and the corner
// index (0..2) whose opposite_edge is that edge.
struct EdgeSide {
  FaceId face = -1;
  int corner = -1;
};

// The flip-relevant neighborhood of an edge e = {x, y} with two distinct
// incident faces f0, f1 and apex vertices k (in f0) and l (in f1).
// Corner indices are into the respective face's corner array; the x/y
// correspondence across the two sides is resolved by vertex identity, or by
// the fixed convention (corner0+1)%3 <-> (corner1+2)%3 when e is a loop.
struct FlipQuad {
  FaceId f0 = -1, f1 = -1; // faces on side 0 / side 1 of e
  int corner0 = -1;        // corner of f0 opposite e (the apex k)
  int corner1 = -1;        // corner of f1 opposite e (the apex l)
  int x0 = -1, y0 = -1;    // corners of f0 at endpoints x, y
  int x1 = -1, y1 = -1;    // corners of f1 at endpoints x, y
  EdgeId e_xk = -1;        // outer edge from x to k (in f0)
  EdgeId e_yk = -1;        // outer edge from y to k (in f0)
  EdgeId e_xl = -1;        // outer edge from x to l (in f1)
  EdgeId e_yl = -1;        // outer edge from y to l (in f1)
};

// Closed triangulated surface stored as a Δ-complex: loops and multi-edges
// are allowed, so faces reference edges by id rather than by vertex pair,
// and every edge has exactly two face-corner incidences.
class Triangulation {
public:
  Triangulation() = default;

  int n_vertices() const { return n_vertices_; }
  int n_edges() const { return static_cast<int>(edge_sides_.size()); }
  int n_faces() const { return static_cast<int>(faces_.size()); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId f) const { return faces_[f]; }
  const std::array<EdgeSide, 2>& edge_sides(EdgeId e) const { return edge_sides_[e]; }

  // V - E + F.
  int euler_characteristic() const {
    return n_vertices_ - n_edges() + n_faces();
  }

  // All corners whose vertex is v, one entry per corner occurrence (a face
  // may contribute several corners at the same vertex on a Δ-complex).
  std::vector<std::pair<FaceId, int>> vertex_star(VertexId v) const;

  // Endpoint vertices of e, read off side 0. Equal entries mean a loop.
  std::pair<VertexId, VertexId> edge_endpoints(EdgeId e) const;

  bool is_loop(EdgeId e) const;

  // True when both incidences of e lie in the same face; such an edge
  // cannot be flipped and is treated as Delaunay by convention.
  bool is_self_glued(EdgeId e) const;

  // Resolves the two-triangle neighborhood of e.
  // Throws UnflippableSelfGlued when both sides of e share a face.
  FlipQuad quad(EdgeId e) const;

  // Replaces the two triangles xyk, xyl adjacent to e = {x, y} by the two
  // triangles xkl, ykl; e becomes the diagonal {k, l}. All ids are stable,
  // only the two incident faces' corner tables are rewritten.
  // Throws UnflippableSelfGlued when both sides of e share a face.
  void flip_connectivity(EdgeId e);

  // Builders; both validate closedness and consistency (see build errors
  // in error.hpp). Explicit form: each face is (v0, v1, v2, e0, e1, e2)
  // with e_i the edge opposite v_i. Implicit form: edges are inferred by
  // matching unordered vertex pairs, which requires the complex to have at
  // most one edge per vertex pair and no loops.
  static Triangulation build_from_faces(
      const std::vector<std::array<int, 6>>& face_list, int n_vertices,
      int n_edges);
  static Triangulation build_from_faces(
      const std::vector<std::array<VertexId, 3>>& face_list, int n_vertices);

private:
  void validate() const;

  int n_vertices_ = 0;
  std::vector<Face> faces_;
  std::vector<std::array<EdgeSide, 2>> edge_sides_;
};

} // namespace calabiflow
