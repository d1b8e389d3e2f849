#include "calabiflow/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace calabiflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Semiperimeter parts (b+c-a, a-b+c, a+b-c); all must clear the relative
// margin eps * perimeter for the triangle to count as valid.
struct Parts {
  double p, sa, sb, sc;
};

Parts parts(double a, double b, double c) {
  // Sort x >= y >= z so each part can be formed without catastrophic
  // cancellation: with that ordering, x - y and the sums below stay accurate
  // to a few ulps even for needle shapes where b + c barely exceeds a.
  double x = a, y = b, z = c;
  int ix = 0, iy = 1, iz = 2;
  if (x < y) { std::swap(x, y); std::swap(ix, iy); }
  if (y < z) { std::swap(y, z); std::swap(iy, iz); }
  if (x < y) { std::swap(x, y); std::swap(ix, iy); }
  double d = x - y;
  double q[3];
  q[ix] = z - d;       // y + z - x, the part that can nearly vanish
  q[iy] = z + d;       // x + z - y
  q[iz] = x + (y - z); // x + y - z
  return Parts{x + (y + z), q[0], q[1], q[2]};
}

bool valid_triangle(double a, double b, double c, double eps) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) return false;
  Parts s = parts(a, b, c);
  if (!std::isfinite(s.p)) return false;
  double margin = eps * s.p;
  return s.sa > margin && s.sb > margin && s.sc > margin;
}

void require_triangle(double a, double b, double c, double eps) {
  if (!valid_triangle(a, b, c, eps)) {
    fail(ErrorCode::DegenerateTriangle,
         "side lengths (" + std::to_string(a) + ", " + std::to_string(b) +
             ", " + std::to_string(c) + ") violate the triangle inequality");
  }
}

// acosh(1 + delta) without the cancellation of forming 1 + delta first.
double acosh1p(double delta) {
  return std::log1p(delta + std::sqrt(delta * (delta + 2.0)));
}

} // namespace

const char* geometry_kind_name(GeometryKind kind) {
  return kind == GeometryKind::Euclidean ? "euclidean" : "hyperbolic";
}

std::array<double, 3> triangle_angles(GeometryKind kind, double a, double b,
                                      double c) {
  require_triangle(a, b, c, kEpsTri);
  if (kind == GeometryKind::Euclidean) {
    Parts s = parts(a, b, c);
    // tan(alpha/2) = sqrt((p-2b)(p-2c) / (p(p-2a))) in semiperimeter parts.
    return {2.0 * std::atan2(std::sqrt(s.sb * s.sc), std::sqrt(s.p * s.sa)),
            2.0 * std::atan2(std::sqrt(s.sa * s.sc), std::sqrt(s.p * s.sb)),
            2.0 * std::atan2(std::sqrt(s.sa * s.sb), std::sqrt(s.p * s.sc))};
  }
  // Hyperbolic half-angle form: tan(alpha/2) =
  // sqrt(sinh(s-b) sinh(s-c) / (sinh(s) sinh(s-a))), s the semiperimeter.
  Parts s = parts(a, b, c);
  double ha = std::sinh(0.5 * s.sa);
  double hb = std::sinh(0.5 * s.sb);
  double hc = std::sinh(0.5 * s.sc);
  double hp = std::sinh(0.5 * s.p);
  return {2.0 * std::atan2(std::sqrt(hb * hc), std::sqrt(hp * ha)),
          2.0 * std::atan2(std::sqrt(ha * hc), std::sqrt(hp * hb)),
          2.0 * std::atan2(std::sqrt(ha * hb), std::sqrt(hp * hc))};
}

double triangle_area(GeometryKind kind, double a, double b, double c) {
  require_triangle(a, b, c, kEpsTri);
  if (kind == GeometryKind::Euclidean) {
    Parts s = parts(a, b, c);
    return 0.25 * std::sqrt(s.p * s.sa * s.sb * s.sc);
  }
  auto ang = triangle_angles(kind, a, b, c);
  return kPi - ang[0] - ang[1] - ang[2];
}

std::array<double, 3> face_lengths(const Triangulation& t,
                                   const PolyhedralMetric& m, FaceId f) {
  const Face& face = t.face(f);
  return {m.lengths[face.corners[0].opposite_edge],
          m.lengths[face.corners[1].opposite_edge],
          m.lengths[face.corners[2].opposite_edge]};
}

std::array<double, 3> face_angles(const Triangulation& t,
                                  const PolyhedralMetric& m, FaceId f) {
  auto l = face_lengths(t, m, f);
  return triangle_angles(m.kind, l[0], l[1], l[2]);
}

VertexVector curvature(const Triangulation& t, const PolyhedralMetric& m) {
  VertexVector K = VertexVector::Constant(t.n_vertices(), 2.0 * kPi);
  for (FaceId f = 0; f < t.n_faces(); ++f) {
    auto ang = face_angles(t, m, f);
    for (int c = 0; c < 3; ++c) {
      K[t.face(f).corners[c].vertex] -= ang[c];
    }
  }
  return K;
}

double total_area(const Triangulation& t, const PolyhedralMetric& m) {
  double area = 0.0;
  for (FaceId f = 0; f < t.n_faces(); ++f) {
    auto l = face_lengths(t, m, f);
    area += triangle_area(m.kind, l[0], l[1], l[2]);
  }
  return area;
}

double gauss_bonnet_residual(const Triangulation& t,
                             const PolyhedralMetric& m) {
  double lambda = (m.kind == GeometryKind::Euclidean) ? 0.0 : -1.0;
  return curvature(t, m).sum() - 2.0 * kPi * t.euler_characteristic() +
         lambda * total_area(t, m);
}

double delaunay_margin(const Triangulation& t, const PolyhedralMetric& m,
                       EdgeId e) {
  if (t.is_self_glued(e)) {
    return std::numeric_limits<double>::infinity();
  }
  const auto& sides = t.edge_sides(e);
  auto a0 = face_angles(t, m, sides[0].face);
  auto a1 = face_angles(t, m, sides[1].face);
  double facing = a0[sides[0].corner] + a1[sides[1].corner];
  if (m.kind == GeometryKind::Euclidean) {
    return kPi - facing;
  }
  // Hyperbolic: the empty-circumball condition in angle form — the two
  // angles facing e may not exceed the sum of the remaining four.
  double all_six = a0[0] + a0[1] + a0[2] + a1[0] + a1[1] + a1[2];
  return all_six - 2.0 * facing;
}

bool is_delaunay_edge(const Triangulation& t, const PolyhedralMetric& m,
                      EdgeId e, double eps_del) {
  return delaunay_margin(t, m, e) >= -eps_del;
}

double flip_length(GeometryKind kind, double l_ik, double l_il, double l_jk,
                   double l_jl, double l_ij, double theta_i_jk,
                   double theta_i_jl, double eps_tri) {
  require_triangle(l_ik, l_jk, l_ij, eps_tri);
  require_triangle(l_il, l_jl, l_ij, eps_tri);
  double phi = theta_i_jk + theta_i_jl;
  double sin_half = std::sin(0.5 * phi);
  double l_kl;
  if (kind == GeometryKind::Euclidean) {
    // l^2 = (a-b)^2 + 4ab sin^2(phi/2): stable for small opening angles.
    double d = l_ik - l_il;
    l_kl = std::sqrt(d * d + 4.0 * l_ik * l_il * sin_half * sin_half);
  } else {
    // cosh l = cosh(a-b) + 2 sinh a sinh b sin^2(phi/2), evaluated as
    // acosh(1 + delta) to keep precision near the degenerate flip moment.
    double half_d = std::sinh(0.5 * (l_ik - l_il));
    double delta = 2.0 * half_d * half_d +
                   2.0 * std::sinh(l_ik) * std::sinh(l_il) * sin_half * sin_half;
    l_kl = acosh1p(delta);
  }
  if (!valid_triangle(l_ik, l_il, l_kl, eps_tri) ||
      !valid_triangle(l_jk, l_jl, l_kl, eps_tri)) {
    fail(ErrorCode::FlipProducesDegenerate,
         "diagonal " + std::to_string(l_kl) +
             " does not form valid triangles with (" + std::to_string(l_ik) +
             ", " + std::to_string(l_il) + ") and (" + std::to_string(l_jk) +
             ", " + std::to_string(l_jl) + ")");
  }
  return l_kl;
}

ScaledMetric vertex_scale(const Triangulation& t, const PolyhedralMetric& m,
                          const VertexVector& du, double eps_tri) {
  if (du.size() != t.n_vertices()) {
    fail(ErrorCode::DimensionMismatch,
         "conformal factor has " + std::to_string(du.size()) +
             " entries for " + std::to_string(t.n_vertices()) + " vertices");
  }
  ScaledMetric out;
  out.metric.kind = m.kind;
  out.metric.lengths.resize(m.lengths.size());
  for (EdgeId e = 0; e < t.n_edges(); ++e) {
    auto [a, b] = t.edge_endpoints(e);
    double scale = std::exp(du[a] + du[b]);
    if (m.kind == GeometryKind::Euclidean) {
      out.metric.lengths[e] = m.lengths[e] * scale;
    } else {
      out.metric.lengths[e] =
          2.0 * std::asinh(scale * std::sinh(0.5 * m.lengths[e]));
    }
  }
  Admissibility adm = admissibility(t, out.metric, eps_tri);
  out.admissible = adm.ok;
  out.violating_faces = std::move(adm.violating_faces);
  return out;
}

Admissibility admissibility(const Triangulation& t, const PolyhedralMetric& m,
                            double eps_tri) {
  Admissibility result;
  for (FaceId f = 0; f < t.n_faces(); ++f) {
    auto l = face_lengths(t, m, f);
    if (!valid_triangle(l[0], l[1], l[2], eps_tri)) {
      result.violating_faces.push_back(f);
    }
  }
  result.ok = result.violating_faces.empty();
  return result;
}

} // namespace calabiflow
