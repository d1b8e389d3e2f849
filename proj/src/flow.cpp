#include "calabiflow/flow.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace calabiflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Slack accepted on sum K* = 2*pi*chi before projecting exactly; generous
// enough for hand-written targets, tight enough to catch a wrong topology.
constexpr double kTargetSumTol = 1e-6;

} // namespace

const char* flow_status_name(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged: return "converged";
    case FlowStatus::MaxTimeExceeded: return "not-converged";
    case FlowStatus::StepCollapse: return "step-collapse";
  }
  return "unknown";
}

double calabi_energy(const VertexVector& K, const VertexVector& target) {
  return (K - target).squaredNorm();
}

VertexVector validate_target(GeometryKind kind, const Triangulation& t,
                             const VertexVector& target) {
  const int n = t.n_vertices();
  if (target.size() != n) {
    fail(ErrorCode::DimensionMismatch,
         "target has " + std::to_string(target.size()) + " entries for " +
             std::to_string(n) + " vertices");
  }
  const double chi_total = 2.0 * kPi * t.euler_characteristic();
  VertexVector out = target;
  if (kind == GeometryKind::Euclidean) {
    double residual = target.sum() - chi_total;
    if (std::abs(residual) > kTargetSumTol) {
      fail(ErrorCode::InadmissibleTarget,
           "sum K* = " + std::to_string(target.sum()) +
               " must equal 2*pi*chi = " + std::to_string(chi_total));
    }
    out.array() -= residual / n; // exact projection onto the constraint
  } else {
    if (!(target.sum() > chi_total)) {
      fail(ErrorCode::InadmissibleTarget,
           "sum K* = " + std::to_string(target.sum()) +
               " must exceed 2*pi*chi = " + std::to_string(chi_total));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(out[i] < 2.0 * kPi)) {
      fail(ErrorCode::InadmissibleTarget,
           "K* at vertex " + std::to_string(i) + " is " +
               std::to_string(out[i]) + "; every entry must be < 2*pi");
    }
  }
  return out;
}

long make_delaunay(FlowState& state, const FlowConfig& cfg,
                   const FlowHooks* hooks) {
  const int ne = state.tri.n_edges();
  const long budget = cfg.max_flips_per_sweep >= 0 ? cfg.max_flips_per_sweep
                                                   : 100L * ne;
  long flips = 0;
  bool clean = false;
  while (!clean) {
    clean = true;
    for (EdgeId e = 0; e < ne; ++e) {
      if (state.tri.is_self_glued(e)) continue; // Delaunay by convention
      if (is_delaunay_edge(state.tri, state.metric, e, cfg.eps_del)) continue;
      if (flips >= budget) {
        fail(ErrorCode::FlipBudgetExceeded,
             "Delaunay sweep exceeded " + std::to_string(budget) +
                 " flips; suspected cycling");
      }
      if (hooks && hooks->before_flip) hooks->before_flip(state, e);

      FlipQuad q = state.tri.quad(e);
      auto a0 = face_angles(state.tri, state.metric, q.f0);
      auto a1 = face_angles(state.tri, state.metric, q.f1);
      const auto& len = state.metric.lengths;
      // Lay out from the endpoint with the wider combined angle; it is the
      // better-conditioned side and, on a flip-worthy edge, both are < pi.
      double l_new;
      if (a0[q.x0] + a1[q.x1] >= a0[q.y0] + a1[q.y1]) {
        l_new = flip_length(state.metric.kind, len[q.e_xk], len[q.e_xl],
                            len[q.e_yk], len[q.e_yl], len[e], a0[q.x0],
                            a1[q.x1], cfg.eps_tri);
      } else {
        l_new = flip_length(state.metric.kind, len[q.e_yk], len[q.e_yl],
                            len[q.e_xk], len[q.e_xl], len[e], a0[q.y0],
                            a1[q.y1], cfg.eps_tri);
      }
      state.tri.flip_connectivity(e);
      state.metric.lengths[e] = l_new;
      ++flips;
      ++state.cumulative_flips;
      if (hooks && hooks->after_flip) hooks->after_flip(state, e);
      clean = false;
      break; // restart the scan from edge 0 (deterministic order)
    }
  }
  return flips;
}

VertexVector flow_velocity(const FlowState& state) {
  CurvatureJacobian jac = curvature_jacobian(state.tri, state.metric);
  VertexVector K = curvature(state.tri, state.metric);
  return apply_laplacian(jac, K - state.target);
}

FlowTraceRecord flow_step(FlowState& state, double& dt, const FlowConfig& cfg,
                          const FlowHooks* hooks) {
  const VertexVector velocity = flow_velocity(state);
  const VertexVector K_old = curvature(state.tri, state.metric);
  const double energy_old = calabi_energy(K_old, state.target);
  // Below this energy the run is at its numerical floor; non-strict
  // decrease is accepted there so double rounding cannot stall the step.
  const double energy_floor =
      state.u.size() * cfg.tol_curv * cfg.tol_curv;

  std::string reason = "dt_init below dt_min";
  for (double trial = dt; trial >= cfg.dt_min;
       trial *= cfg.backtrack_factor) {
    ScaledMetric scaled =
        vertex_scale(state.tri, state.metric, trial * velocity, cfg.eps_tri);
    if (!scaled.admissible) {
      reason = "metric inadmissible at dt = " + std::to_string(trial);
      continue;
    }
    FlowState candidate;
    candidate.t = state.t + trial;
    candidate.tri = state.tri;
    candidate.metric = std::move(scaled.metric);
    candidate.u = state.u + trial * velocity;
    candidate.target = state.target;
    candidate.cumulative_flips = state.cumulative_flips;

    long flips = 0;
    try {
      flips = make_delaunay(candidate, cfg, hooks);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::FlipProducesDegenerate) {
        // Overshot into a cornered quad; a smaller step smooths it out.
        reason = err.what();
        continue;
      }
      throw;
    }

    VertexVector K_new = curvature(candidate.tri, candidate.metric);
    double energy_new = calabi_energy(K_new, candidate.target);
    bool accept = energy_new < energy_old ||
                  (energy_old < energy_floor && energy_new <= energy_old);
    if (!accept) {
      reason = "energy " + std::to_string(energy_new) +
               " did not decrease below " + std::to_string(energy_old) +
               " at dt = " + std::to_string(trial);
      continue;
    }

    state = std::move(candidate);
    FlowTraceRecord rec;
    rec.t = state.t;
    rec.dt = trial;
    rec.calabi_energy = energy_new;
    rec.max_abs_curv_err = (K_new - state.target).lpNorm<Eigen::Infinity>();
    rec.flips_step = flips;
    rec.flips_cum = state.cumulative_flips;
    rec.sum_u = state.u.sum();
    dt = std::min(trial * cfg.grow_factor, cfg.dt_max);
    return rec;
  }
  fail(ErrorCode::StepCollapse,
       "no acceptable step above dt_min = " + std::to_string(cfg.dt_min) +
           "; last rejection: " + reason);
}

FlowResult run_flow(const Triangulation& tri, const PolyhedralMetric& metric,
                    const VertexVector& target, const FlowConfig& cfg,
                    const FlowHooks* hooks, const VertexVector* u0) {
  FlowState state;
  state.tri = tri;
  state.metric = metric;
  state.target = validate_target(metric.kind, tri, target);
  state.u = VertexVector::Zero(tri.n_vertices());
  if (u0) {
    ScaledMetric scaled = vertex_scale(tri, metric, *u0, cfg.eps_tri);
    if (!scaled.admissible) {
      fail(ErrorCode::DegenerateTriangle,
           "initial conformal factor leaves " +
               std::to_string(scaled.violating_faces.size()) +
               " face(s) violating the triangle inequality");
    }
    state.metric = std::move(scaled.metric);
    state.u = *u0;
  } else {
    Admissibility adm = admissibility(tri, metric, cfg.eps_tri);
    if (!adm.ok) {
      fail(ErrorCode::DegenerateTriangle,
           "initial metric violates the triangle inequality on " +
               std::to_string(adm.violating_faces.size()) + " face(s)");
    }
  }

  FlowResult result;
  long pre_flips = make_delaunay(state, cfg, hooks);
  {
    VertexVector K = curvature(state.tri, state.metric);
    FlowTraceRecord rec;
    rec.t = 0.0;
    rec.dt = 0.0;
    rec.calabi_energy = calabi_energy(K, state.target);
    rec.max_abs_curv_err = (K - state.target).lpNorm<Eigen::Infinity>();
    rec.flips_step = pre_flips;
    rec.flips_cum = state.cumulative_flips;
    rec.sum_u = state.u.sum();
    if (hooks && hooks->on_record) hooks->on_record(state, rec);
    result.trace.push_back(rec);
  }

  FlowStatus status;
  if (result.trace.back().max_abs_curv_err < cfg.tol_curv) {
    status = FlowStatus::Converged;
  } else {
    double dt = cfg.dt_init;
    for (;;) {
      if (state.t > cfg.t_max) {
        status = FlowStatus::MaxTimeExceeded;
        break;
      }
      FlowTraceRecord rec;
      try {
        rec = flow_step(state, dt, cfg, hooks);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::StepCollapse) {
          status = FlowStatus::StepCollapse;
          break;
        }
        throw;
      }
      if (hooks && hooks->on_record) hooks->on_record(state, rec);
      result.trace.push_back(rec);
      if (rec.max_abs_curv_err < cfg.tol_curv) {
        status = FlowStatus::Converged;
        break;
      }
    }
  }
  result.state = std::move(state);
  result.status = status;
  return result;
}

DecayFit estimate_decay_rate(const std::vector<FlowTraceRecord>& trace) {
  std::vector<std::pair<double, double>> pts; // (t, ln C)
  for (const FlowTraceRecord& rec : trace) {
    if (rec.calabi_energy > 0.0) {
      pts.emplace_back(rec.t, std::log(rec.calabi_energy));
    }
  }
  const size_t start = pts.size() / 2; // fit the post-transient tail
  const size_t count = pts.size() - start;
  if (count < 10) {
    fail(ErrorCode::InsufficientTrace,
         "decay fit needs at least 10 usable records, have " +
             std::to_string(count));
  }
  double mean_t = 0.0, mean_y = 0.0;
  for (size_t i = start; i < pts.size(); ++i) {
    mean_t += pts[i].first;
    mean_y += pts[i].second;
  }
  mean_t /= count;
  mean_y /= count;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (size_t i = start; i < pts.size(); ++i) {
    double dt_i = pts[i].first - mean_t;
    double dy_i = pts[i].second - mean_y;
    stt += dt_i * dt_i;
    sty += dt_i * dy_i;
    syy += dy_i * dy_i;
  }
  if (!(stt > 0.0)) {
    fail(ErrorCode::InsufficientTrace, "trace records share a single time");
  }
  DecayFit fit;
  fit.slope = sty / stt;
  fit.r_squared = (syy > 0.0) ? (sty * sty) / (stt * syy) : 0.0;
  fit.n_points = static_cast<int>(count);
  return fit;
}

} // namespace calabiflow
