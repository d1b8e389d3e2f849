#include "calabiflow/triangulation.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace calabiflow {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OpenSurface: return "OpenSurface";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::AmbiguousEdges: return "AmbiguousEdges";
    case ErrorCode::UnflippableSelfGlued: return "UnflippableSelfGlued";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::FlipProducesDegenerate: return "FlipProducesDegenerate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InadmissibleTarget: return "InadmissibleTarget";
    case ErrorCode::FlipBudgetExceeded: return "FlipBudgetExceeded";
    case ErrorCode::StepCollapse: return "StepCollapse";
    case ErrorCode::InsufficientTrace: return "InsufficientTrace";
    case ErrorCode::NonTriangleFace: return "NonTriangleFace";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

std::vector<std::pair<FaceId, int>> Triangulation::vertex_star(VertexId v) const {
  std::vector<std::pair<FaceId, int>> star;
  for (FaceId f = 0; f < n_faces(); ++f) {
    for (int c = 0; c < 3; ++c) {
      if (faces_[f].corners[c].vertex == v) star.emplace_back(f, c);
    }
  }
  return star;
}

std::pair<VertexId, VertexId> Triangulation::edge_endpoints(EdgeId e) const {
  const EdgeSide& s = edge_sides_[e][0];
  const Face& f = faces_[s.face];
  return {f.corners[(s.corner + 1) % 3].vertex,
          f.corners[(s.corner + 2) % 3].vertex};
}

bool Triangulation::is_loop(EdgeId e) const {
  auto [a, b] = edge_endpoints(e);
  return a == b;
}

bool Triangulation::is_self_glued(EdgeId e) const {
  return edge_sides_[e][0].face == edge_sides_[e][1].face;
}

FlipQuad Triangulation::quad(EdgeId e) const {
  const EdgeSide& s0 = edge_sides_[e][0];
  const EdgeSide& s1 = edge_sides_[e][1];
  if (s0.face == s1.face) {
    fail(ErrorCode::UnflippableSelfGlued,
         "edge " + std::to_string(e) + " has both sides in face " +
             std::to_string(s0.face));
  }

  FlipQuad q;
  q.f0 = s0.face;
  q.f1 = s1.face;
  q.corner0 = s0.corner;
  q.corner1 = s1.corner;
  q.x0 = (q.corner0 + 1) % 3;
  q.y0 = (q.corner0 + 2) % 3;

  const Face& f0 = faces_[q.f0];
  const Face& f1 = faces_[q.f1];
  VertexId vx = f0.corners[q.x0].vertex;
  VertexId vy = f0.corners[q.y0].vertex;
  int p1 = (q.corner1 + 1) % 3;
  int q1 = (q.corner1 + 2) % 3;
  if (vx != vy) {
    // Distinct endpoints: match corners across the gluing by vertex id.
    q.x1 = (f1.corners[p1].vertex == vx) ? p1 : q1;
  } else {
    // Loop: vertex ids cannot disambiguate; fixed orientation convention.
    q.x1 = q1;
  }
  q.y1 = (q.x1 == p1) ? q1 : p1;

  // Edge opposite a corner spans the other two corners, so the outer edge
  // from an endpoint to the apex is the one opposite the *other* endpoint.
  q.e_xk = f0.corners[q.y0].opposite_edge;
  q.e_yk = f0.corners[q.x0].opposite_edge;
  q.e_xl = f1.corners[q.y1].opposite_edge;
  q.e_yl = f1.corners[q.x1].opposite_edge;
  return q;
}

void Triangulation::flip_connectivity(EdgeId e) {
  FlipQuad q = quad(e);
  const VertexId vx = faces_[q.f0].corners[q.x0].vertex;
  const VertexId vy = faces_[q.f0].corners[q.y0].vertex;
  const VertexId vk = faces_[q.f0].corners[q.corner0].vertex;
  const VertexId vl = faces_[q.f1].corners[q.corner1].vertex;

  // Edges touched by the rewrite: e plus the four outer edges.
  std::vector<EdgeId> touched = {e, q.e_xk, q.e_yk, q.e_xl, q.e_yl};
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  // Sides of touched edges that live outside the two rewritten faces
  // survive; the rest are re-derived from the new corner tables.
  std::vector<std::vector<EdgeSide>> sides(touched.size());
  for (size_t i = 0; i < touched.size(); ++i) {
    for (const EdgeSide& s : edge_sides_[touched[i]]) {
      if (s.face != q.f0 && s.face != q.f1) sides[i].push_back(s);
    }
  }

  // New triangles xkl and ykl; e becomes the diagonal {k, l}.
  faces_[q.f0] = Face{{Corner{vx, e}, Corner{vk, q.e_xl}, Corner{vl, q.e_xk}}};
  faces_[q.f1] = Face{{Corner{vy, e}, Corner{vl, q.e_yk}, Corner{vk, q.e_yl}}};

  for (FaceId f : {q.f0, q.f1}) {
    for (int c = 0; c < 3; ++c) {
      EdgeId ec = faces_[f].corners[c].opposite_edge;
      size_t i = std::lower_bound(touched.begin(), touched.end(), ec) -
                 touched.begin();
      sides[i].push_back(EdgeSide{f, c});
    }
  }
  for (size_t i = 0; i < touched.size(); ++i) {
    if (sides[i].size() != 2) {
      fail(ErrorCode::NonManifoldEdge,
           "internal flip bookkeeping left edge " + std::to_string(touched[i]) +
               " with " + std::to_string(sides[i].size()) + " sides");
    }
    edge_sides_[touched[i]] = {sides[i][0], sides[i][1]};
  }
}

void Triangulation::validate() const {
  const int ne = n_edges();
  std::vector<int> incidences(ne, 0);
  for (FaceId f = 0; f < n_faces(); ++f) {
    for (int c = 0; c < 3; ++c) {
      const Corner& corner = faces_[f].corners[c];
      if (corner.vertex < 0 || corner.vertex >= n_vertices_) {
        fail(ErrorCode::ParseError,
             "face " + std::to_string(f) + " references vertex " +
                 std::to_string(corner.vertex) + " outside 0.." +
                 std::to_string(n_vertices_ - 1));
      }
      if (corner.opposite_edge < 0 || corner.opposite_edge >= ne) {
        fail(ErrorCode::ParseError,
             "face " + std::to_string(f) + " references edge " +
                 std::to_string(corner.opposite_edge) + " outside 0.." +
                 std::to_string(ne - 1));
      }
      ++incidences[corner.opposite_edge];
    }
  }
  for (EdgeId e = 0; e < ne; ++e) {
    if (incidences[e] > 2) {
      fail(ErrorCode::NonManifoldEdge,
           "edge " + std::to_string(e) + " has " +
               std::to_string(incidences[e]) + " face incidences");
    }
  }
  for (EdgeId e = 0; e < ne; ++e) {
    if (incidences[e] != 2) {
      fail(ErrorCode::OpenSurface,
           "edge " + std::to_string(e) + " has " +
               std::to_string(incidences[e]) +
               " face incidences; a closed surface needs exactly 2");
    }
  }
  // Both sides of an edge must span the same unordered vertex pair,
  // otherwise the gluing is inconsistent.
  for (EdgeId e = 0; e < ne; ++e) {
    std::array<std::pair<VertexId, VertexId>, 2> ends;
    for (int s = 0; s < 2; ++s) {
      const EdgeSide& side = edge_sides_[e][s];
      const Face& f = faces_[side.face];
      VertexId a = f.corners[(side.corner + 1) % 3].vertex;
      VertexId b = f.corners[(side.corner + 2) % 3].vertex;
      ends[s] = std::minmax(a, b);
    }
    if (ends[0] != ends[1]) {
      fail(ErrorCode::AmbiguousEdges,
           "edge " + std::to_string(e) +
               " spans different vertex pairs on its two sides");
    }
  }
}

Triangulation Triangulation::build_from_faces(
    const std::vector<std::array<int, 6>>& face_list, int n_vertices,
    int n_edges) {
  Triangulation t;
  t.n_vertices_ = n_vertices;
  t.faces_.reserve(face_list.size());
  t.edge_sides_.assign(n_edges, {EdgeSide{}, EdgeSide{}});
  std::vector<int> filled(n_edges, 0);
  for (const auto& row : face_list) {
    Face face;
    for (int c = 0; c < 3; ++c) {
      face.corners[c] = Corner{row[c], row[3 + c]};
    }
    FaceId fid = static_cast<FaceId>(t.faces_.size());
    t.faces_.push_back(face);
    for (int c = 0; c < 3; ++c) {
      EdgeId e = face.corners[c].opposite_edge;
      if (e >= 0 && e < n_edges && filled[e] < 2) {
        t.edge_sides_[e][filled[e]++] = EdgeSide{fid, c};
      }
    }
  }
  t.validate();
  return t;
}

Triangulation Triangulation::build_from_faces(
    const std::vector<std::array<VertexId, 3>>& face_list, int n_vertices) {
  // Implicit edges: key by unordered vertex pair. Loops cannot be expressed
  // this way and doubled pairs are indistinguishable, so both are rejected.
  std::map<std::pair<VertexId, VertexId>, EdgeId> edge_of_pair;
  std::map<std::pair<VertexId, VertexId>, int> pair_count;
  std::vector<std::array<int, 6>> rows;
  rows.reserve(face_list.size());
  for (size_t f = 0; f < face_list.size(); ++f) {
    const auto& tri = face_list[f];
    std::array<int, 6> row = {tri[0], tri[1], tri[2], -1, -1, -1};
    for (int c = 0; c < 3; ++c) {
      VertexId a = tri[(c + 1) % 3];
      VertexId b = tri[(c + 2) % 3];
      if (a == b) {
        fail(ErrorCode::AmbiguousEdges,
             "face " + std::to_string(f) +
                 " has a repeated vertex; loops need explicit edge ids");
      }
      auto key = std::minmax(a, b);
      auto it = edge_of_pair.find(key);
      if (it == edge_of_pair.end()) {
        it = edge_of_pair.emplace(key, static_cast<EdgeId>(edge_of_pair.size()))
                 .first;
      }
      row[3 + c] = it->second;
      ++pair_count[key];
    }
    rows.push_back(row);
  }
  for (const auto& [key, count] : pair_count) {
    if (count > 2 && count % 2 == 0) {
      fail(ErrorCode::AmbiguousEdges,
           "vertex pair (" + std::to_string(key.first) + ", " +
               std::to_string(key.second) + ") appears in " +
               std::to_string(count) +
               " faces; multi-edges need explicit edge ids");
    }
  }
  return build_from_faces(rows, n_vertices,
                          static_cast<int>(edge_of_pair.size()));
}

} // namespace calabiflow
