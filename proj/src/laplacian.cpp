#include "calabiflow/laplacian.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace calabiflow {

double cotan_weight(const Triangulation& t, const PolyhedralMetric& m,
                    EdgeId e) {
  const auto& sides = t.edge_sides(e);
  double w = 0.0;
  for (const EdgeSide& s : sides) {
    auto ang = face_angles(t, m, s.face);
    w += 1.0 / std::tan(ang[s.corner]);
  }
  return w;
}

CurvatureJacobian jacobian_euclidean(const Triangulation& t,
                                     const PolyhedralMetric& m) {
  const int n = t.n_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (EdgeId e = 0; e < t.n_edges(); ++e) {
    auto [i, j] = t.edge_endpoints(e);
    if (i == j) continue; // loops only affect the diagonal, via the row sum
    double w = cotan_weight(t, m, e);
    L(i, j) -= w;
    L(j, i) -= w;
  }
  // dK_i/du is orthogonal to uniform scaling, so the diagonal is minus the
  // off-diagonal row sum; this also captures every loop contribution.
  for (int i = 0; i < n; ++i) {
    L(i, i) = 0.0;
    L(i, i) = -L.row(i).sum();
  }
  return CurvatureJacobian{GeometryKind::Euclidean, std::move(L)};
}

CurvatureJacobian jacobian_hyperbolic(const Triangulation& t,
                                      const PolyhedralMetric& m) {
  const int n = t.n_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (FaceId f = 0; f < t.n_faces(); ++f) {
    auto s = face_lengths(t, m, f);
    auto th = face_angles(t, m, f);
    double sh[3] = {std::sinh(s[0]), std::sinh(s[1]), std::sinh(s[2])};
    // Scale sensitivity of each side length: dl/du = 2 tanh(l/2) per
    // endpoint corner (from differentiating sinh(l'/2) = e^{u+u'} sinh(l/2)).
    double tau[3] = {2.0 * std::tanh(0.5 * s[0]), 2.0 * std::tanh(0.5 * s[1]),
                     2.0 * std::tanh(0.5 * s[2])};
    // Common factor sinh(s_b) sinh(s_c) sin(theta_a), symmetric in the
    // corner labeling (it is the sine-rule normalizer of the triangle).
    double ah = sh[1] * sh[2] * std::sin(th[0]);
    // dtheta[a][c] = d theta_a / d s_c from the hyperbolic law of cosines.
    double dtheta[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int c = 0; c < 3; ++c) {
        if (a == c) {
          dtheta[a][c] = sh[a] / ah;
        } else {
          int b = 3 - a - c; // the remaining corner
          dtheta[a][c] = -std::cos(th[b]) * sh[a] / ah;
        }
      }
    }
    // D[a][b] = d theta_a / d u at corner b: corner b scales the two sides
    // it touches, i.e. every side except the one opposite b.
    double D[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double sum = 0.0;
        for (int c = 0; c < 3; ++c) {
          if (c != b) sum += dtheta[a][c] * tau[c];
        }
        D[a][b] = sum;
      }
    }
    // K picks up -theta per corner; scatter the symmetrized face block
    // (D is symmetric analytically; averaging removes last-ulp asymmetry).
    const Face& face = t.face(f);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        L(face.corners[a].vertex, face.corners[b].vertex) -=
            0.5 * (D[a][b] + D[b][a]);
      }
    }
  }
  return CurvatureJacobian{GeometryKind::Hyperbolic, std::move(L)};
}

CurvatureJacobian curvature_jacobian(const Triangulation& t,
                                     const PolyhedralMetric& m) {
  return m.kind == GeometryKind::Euclidean ? jacobian_euclidean(t, m)
                                           : jacobian_hyperbolic(t, m);
}

Eigen::VectorXd apply_laplacian(const CurvatureJacobian& jac,
                                const Eigen::VectorXd& f) {
  if (f.size() != jac.L.rows()) {
    fail(ErrorCode::DimensionMismatch,
         "vector of size " + std::to_string(f.size()) + " against " +
             std::to_string(jac.L.rows()) + "x" + std::to_string(jac.L.cols()) +
             " operator");
  }
  return -(jac.L * f);
}

Eigen::VectorXd eigenvalues(const CurvatureJacobian& jac) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac.L,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues(); // ascending
}

EigenBounds min_eigenvalue(const CurvatureJacobian& jac) {
  Eigen::VectorXd ev = eigenvalues(jac);
  EigenBounds out;
  out.smallest = ev[0];
  out.second_smallest = ev.size() > 1
                            ? ev[1]
                            : std::numeric_limits<double>::quiet_NaN();
  return out;
}

} // namespace calabiflow
