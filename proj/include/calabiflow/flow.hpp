#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

#include "calabiflow/geometry.hpp"
#include "calabiflow/laplacian.hpp"
#include "calabiflow/triangulation.hpp"

namespace calabiflow {

// Integrator knobs. The flow is the negative gradient flow of the energy
// C = sum (K_i - K*_i)^2, so explicit Euler steps are accepted only when
// they keep the metric admissible and do not increase C (backtracking
// line search); accepted steps let dt grow back toward dt_max.
struct FlowConfig {
  double dt_init = 1e-2;
  double dt_min = 1e-8;
  double dt_max = 1.0;
  double tol_curv = 1e-10; // convergence: max |K - K*| below this
  double t_max = 1e4;      // give up (NotConverged) beyond this flow time
  double backtrack_factor = 0.5;
  double grow_factor = 1.2;
  long max_flips_per_sweep = -1; // -1 = 100 * n_edges
  double eps_del = kEpsDel;
  double eps_tri = kEpsTri;
};

// Everything the integrator owns between steps. The triangulation is
// Delaunay in the metric at every externally observable instant; u is the
// conformal factor accumulated from t = 0 across all steps and surgeries
// (flips are isometries, so per-vertex accumulation stays meaningful).
struct FlowState {
  double t = 0.0;
  Triangulation tri;
  PolyhedralMetric metric;
  VertexVector u;
  VertexVector target; // K*
  long cumulative_flips = 0;
};

struct FlowTraceRecord {
  double t = 0.0;
  double dt = 0.0;
  double calabi_energy = 0.0;    // sum (K_i - K*_i)^2
  double max_abs_curv_err = 0.0; // max |K_i - K*_i|
  long flips_step = 0;
  long flips_cum = 0;
  double sum_u = 0.0;
  // Optional diagnostic, NaN unless explicitly computed.
  double min_eig_L = std::numeric_limits<double>::quiet_NaN();
};

enum class FlowStatus {
  Converged,       // max |K - K*| < tol_curv
  MaxTimeExceeded, // t passed t_max without converging
  StepCollapse,    // no acceptable step above dt_min
};

const char* flow_status_name(FlowStatus status);

struct FlowResult {
  FlowState state;
  std::vector<FlowTraceRecord> trace;
  FlowStatus status = FlowStatus::Converged;
};

// Observation points for tests and diagnostics; any hook may be empty.
// before_flip/after_flip fire around every connectivity flip, including
// those inside rejected trial steps (their states are still valid metrics).
struct FlowHooks {
  std::function<void(const FlowState&, EdgeId)> before_flip;
  std::function<void(const FlowState&, EdgeId)> after_flip;
  std::function<void(const FlowState&, const FlowTraceRecord&)> on_record;
};

double calabi_energy(const VertexVector& K, const VertexVector& target);

// Checks the existence conditions for a target curvature and returns the
// (possibly adjusted) target actually flowed to. Every K*_i must be < 2*pi.
// Euclidean: sum K* must equal 2*pi*chi; inputs within 1e-6 are projected
// exactly onto the constraint by spreading the residual uniformly.
// Hyperbolic: sum K* must exceed 2*pi*chi strictly. Violations throw
// InadmissibleTarget.
VertexVector validate_target(GeometryKind kind, const Triangulation& t,
                             const VertexVector& target);

// Lawson sweep: scan edges in ascending id order, flip the first
// non-Delaunay edge (assigning the diagonal its layout length), restart;
// repeat until clean. Returns the number of flips; adds them to
// state.cumulative_flips. Curvature and total area are invariant (flips
// are isometries of the polyhedral metric). Self-glued edges are Delaunay
// by convention and never flipped.
long make_delaunay(FlowState& state, const FlowConfig& cfg = {},
                   const FlowHooks* hooks = nullptr);

// du/dt = Delta (K - K*) = -L (K - K*) on the current triangulation.
VertexVector flow_velocity(const FlowState& state);

// One accepted explicit Euler step. dt is the running proposal: on entry
// the size to try first, on exit the grown proposal for the next step.
// Backtracks on inadmissibility or on an energy increase; throws
// StepCollapse when the proposal falls below dt_min.
FlowTraceRecord flow_step(FlowState& state, double& dt, const FlowConfig& cfg,
                          const FlowHooks* hooks = nullptr);

// Full run: validates the target, applies the optional initial conformal
// factor u0 (the flow then starts at vertex_scale(metric, u0) with
// u(0) = u0), performs pre-flow Delaunay surgery, then steps until
// convergence, t_max, or step collapse. The trace always includes a t = 0
// record (dt 0, flips_step = pre-flow flip count).
FlowResult run_flow(const Triangulation& tri, const PolyhedralMetric& metric,
                    const VertexVector& target, const FlowConfig& cfg = {},
                    const FlowHooks* hooks = nullptr,
                    const VertexVector* u0 = nullptr);

// Least-squares line through (t, ln C) over the later half of the records
// with positive energy. slope < 0 on a converging run. Throws
// InsufficientTrace below 10 usable records.
struct DecayFit {
  double slope = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

DecayFit estimate_decay_rate(const std::vector<FlowTraceRecord>& trace);

} // namespace calabiflow
