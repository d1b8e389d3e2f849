#pragma once

#include <Eigen/Dense>

#include "calabiflow/geometry.hpp"
#include "calabiflow/triangulation.hpp"

namespace calabiflow {

// L = dK/du, the Jacobian of the curvature map with respect to the
// conformal factor at fixed triangulation. Symmetric; positive
// semi-definite with kernel spanned by the constant vector (Euclidean,
// Delaunay), or strictly positive definite (hyperbolic). The discrete
// Laplace operator is Delta = -L. Dense storage: problems are desk-scale.
struct CurvatureJacobian {
  GeometryKind kind = GeometryKind::Euclidean;
  Eigen::MatrixXd L;
};

// cot(theta) + cot(theta') over the two angles facing e. Negative exactly
// on non-Delaunay edges, zero on ties.
double cotan_weight(const Triangulation& t, const PolyhedralMetric& m,
                    EdgeId e);

// Euclidean assembly: off-diagonal L_ij = -sum of cotan weights over the
// edges joining i and j (multi-edges add up; loops contribute nothing
// off-diagonal); diagonal by zero row sums, which is exact because uniform
// scaling leaves every Euclidean angle unchanged.
CurvatureJacobian jacobian_euclidean(const Triangulation& t,
                                     const PolyhedralMetric& m);

// Hyperbolic assembly per face via the chain rule: the derivative of each
// inner angle with respect to each corner's log scale, using
// dl/du = 2 tanh(l/2) per endpoint for the side lengths. Symmetric positive
// definite; gate-tested against finite differences of the curvature map.
CurvatureJacobian jacobian_hyperbolic(const Triangulation& t,
                                      const PolyhedralMetric& m);

// Dispatch on m.kind.
CurvatureJacobian curvature_jacobian(const Triangulation& t,
                                     const PolyhedralMetric& m);

// (Delta f) = -L f. Throws DimensionMismatch.
Eigen::VectorXd apply_laplacian(const CurvatureJacobian& jac,
                                const Eigen::VectorXd& f);

// Smallest and second-smallest eigenvalues (dense symmetric solve). The
// second-smallest is the spectral gap of interest on Euclidean surfaces,
// where the smallest is the kernel at zero; NaN when the matrix is 1x1.
struct EigenBounds {
  double smallest = 0.0;
  double second_smallest = 0.0;
};

EigenBounds min_eigenvalue(const CurvatureJacobian& jac);

// All eigenvalues, ascending.
Eigen::VectorXd eigenvalues(const CurvatureJacobian& jac);

} // namespace calabiflow
