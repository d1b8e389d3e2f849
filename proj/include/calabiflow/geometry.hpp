#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "calabiflow/triangulation.hpp"

namespace calabiflow {

// Background geometry of the triangles. Fixes the Gauss-Bonnet constant:
// lambda = 0 (Euclidean) or -1 (hyperbolic).
enum class GeometryKind { Euclidean, Hyperbolic };

const char* geometry_kind_name(GeometryKind kind);

// Relative margin below which a triangle inequality counts as violated.
inline constexpr double kEpsTri = 1e-12;
// Absolute slack (radians) on the Delaunay angle inequalities; ties are
// Delaunay.
inline constexpr double kEpsDel = 1e-12;

// Edge lengths indexed by EdgeId. Valid on a triangulation when every face
// satisfies the strict triangle inequalities.
struct PolyhedralMetric {
  GeometryKind kind = GeometryKind::Euclidean;
  std::vector<double> lengths;
};

// Per-vertex quantities are Eigen vectors indexed by VertexId: conformal
// factors u (log scales) and curvatures K (2*pi minus the cone angle).
using VertexVector = Eigen::VectorXd;

// Inner angles (alpha, beta, gamma) opposite sides (a, b, c). Computed with
// half-angle arctangents from the (sinh-)semiperimeter parts, which stay
// accurate where the direct arccosine loses digits near 0 and pi — flips
// happen exactly in that regime.
// Throws DegenerateTriangle when a triangle inequality fails within kEpsTri.
std::array<double, 3> triangle_angles(GeometryKind kind, double a, double b,
                                      double c);

// Euclidean: Heron's formula. Hyperbolic: angle defect pi - alpha - beta - gamma.
double triangle_area(GeometryKind kind, double a, double b, double c);

// Side lengths (opposite corners 0,1,2) and inner angles of face f.
std::array<double, 3> face_lengths(const Triangulation& t,
                                   const PolyhedralMetric& m, FaceId f);
std::array<double, 3> face_angles(const Triangulation& t,
                                  const PolyhedralMetric& m, FaceId f);

// K_i = 2*pi - sum of corner angles at vertex i (corner multiplicity counts).
VertexVector curvature(const Triangulation& t, const PolyhedralMetric& m);

double total_area(const Triangulation& t, const PolyhedralMetric& m);

// sum K_i - 2*pi*chi + lambda * total area; a diagnostic that is zero up to
// round-off on every valid metric.
double gauss_bonnet_residual(const Triangulation& t, const PolyhedralMetric& m);

// Slack of the Delaunay condition at e: the amount by which the inequality
// holds, positive when strictly Delaunay. Euclidean: pi - (theta_k + theta_l)
// for the two angles facing e. Hyperbolic: (beta+gamma+beta'+gamma') -
// (alpha+alpha'), which reduces to the Euclidean form when angle sums are pi.
// Self-glued edges report +infinity (Delaunay by convention).
double delaunay_margin(const Triangulation& t, const PolyhedralMetric& m,
                       EdgeId e);

// margin >= -eps_del: ties count as Delaunay.
bool is_delaunay_edge(const Triangulation& t, const PolyhedralMetric& m,
                      EdgeId e, double eps_del = kEpsDel);

// Length of the diagonal kl after flipping the shared edge ij, laid out
// across the quad: the angle at the shared corner is the sum of the two
// incident triangle angles there, and the law of cosines gives kl.
//   Euclidean:  l_kl^2     = l_ik^2 + l_il^2 - 2 l_ik l_il cos(theta_i)
//   hyperbolic: cosh l_kl  = cosh l_ik cosh l_il - sinh l_ik sinh l_il cos(theta_i)
// with theta_i = theta_i_jk + theta_i_jl. Both new triangles (ikl) and (jkl)
// are checked; a violated triangle inequality (non-convex quad) throws
// FlipProducesDegenerate.
double flip_length(GeometryKind kind, double l_ik, double l_il, double l_jk,
                   double l_jl, double l_ij, double theta_i_jk,
                   double theta_i_jl, double eps_tri = kEpsTri);

// Result of vertex scaling: the new metric is always returned; admissible
// reports whether all faces still satisfy the triangle inequalities, so
// callers can probe a step and back off.
struct ScaledMetric {
  PolyhedralMetric metric;
  bool admissible = false;
  std::vector<FaceId> violating_faces;
};

// Conformal vertex scaling by du. Euclidean: l' = l * exp(u_i + u_j).
// Hyperbolic: sinh(l'/2) = exp(u_i + u_j) * sinh(l/2). Loop edges use their
// single endpoint twice.
ScaledMetric vertex_scale(const Triangulation& t, const PolyhedralMetric& m,
                          const VertexVector& du, double eps_tri = kEpsTri);

struct Admissibility {
  bool ok = false;
  std::vector<FaceId> violating_faces;
};

// True iff every face satisfies the triangle inequalities with relative
// margin > eps_tri.
Admissibility admissibility(const Triangulation& t, const PolyhedralMetric& m,
                            double eps_tri = kEpsTri);

} // namespace calabiflow
