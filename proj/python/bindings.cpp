// Python bindings: the geometry, Laplacian, flow, and file-format API with
// Eigen vectors/matrices exposed as NumPy arrays. Flow hooks are not bound;
// traces carry everything the Python side needs for analysis.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "calabiflow/flow.hpp"
#include "calabiflow/io.hpp"
#include "calabiflow/laplacian.hpp"

namespace py = pybind11;
using namespace calabiflow;

namespace {

std::string metric_repr(const PolyhedralMetric& m) {
  std::ostringstream out;
  out << "PolyhedralMetric(" << geometry_kind_name(m.kind) << ", "
      << m.lengths.size() << " edges)";
  return out.str();
}

std::string tri_repr(const Triangulation& t) {
  std::ostringstream out;
  out << "Triangulation(V=" << t.n_vertices() << ", E=" << t.n_edges()
      << ", F=" << t.n_faces() << ", chi=" << t.euler_characteristic() << ")";
  return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polyhedral metrics with prescribed cone curvature via "
            "discretely-conformal curvature flow with Delaunay surgery";

  py::register_exception<Error>(m, "CalabiflowError");

  py::enum_<GeometryKind>(m, "GeometryKind")
      .value("euclidean", GeometryKind::Euclidean)
      .value("hyperbolic", GeometryKind::Hyperbolic);

  py::class_<PolyhedralMetric>(m, "PolyhedralMetric")
      .def(py::init<>())
      .def(py::init<GeometryKind, std::vector<double>>(), py::arg("kind"),
           py::arg("lengths"))
      .def_readwrite("kind", &PolyhedralMetric::kind)
      .def_readwrite("lengths", &PolyhedralMetric::lengths)
      .def("__repr__", &metric_repr);

  py::class_<Triangulation>(m, "Triangulation")
      .def_static(
          "from_faces",
          [](const std::vector<std::array<int, 6>>& faces, int n_vertices,
             int n_edges) {
            return Triangulation::build_from_faces(faces, n_vertices, n_edges);
          },
          py::arg("faces"), py::arg("n_vertices"), py::arg("n_edges"),
          "Explicit form: each face is (v0, v1, v2, e0, e1, e2) with e_i "
          "the edge opposite v_i. Supports loops and multi-edges.")
      .def_static(
          "from_vertex_faces",
          [](const std::vector<std::array<VertexId, 3>>& faces,
             int n_vertices) {
            return Triangulation::build_from_faces(faces, n_vertices);
          },
          py::arg("faces"), py::arg("n_vertices"),
          "Implicit form: edges inferred from unordered vertex pairs; the "
          "complex must have no loops or multi-edges.")
      .def_property_readonly("n_vertices", &Triangulation::n_vertices)
      .def_property_readonly("n_edges", &Triangulation::n_edges)
      .def_property_readonly("n_faces", &Triangulation::n_faces)
      .def_property_readonly("euler_characteristic",
                             &Triangulation::euler_characteristic)
      .def("edge_endpoints", &Triangulation::edge_endpoints, py::arg("edge"))
      .def("is_loop", &Triangulation::is_loop, py::arg("edge"))
      .def("is_self_glued", &Triangulation::is_self_glued, py::arg("edge"))
      .def("__repr__", &tri_repr);

  // --- geometry kernel ---
  m.def("triangle_angles", &triangle_angles, py::arg("kind"), py::arg("a"),
        py::arg("b"), py::arg("c"),
        "Inner angles opposite sides (a, b, c).");
  m.def("triangle_area", &triangle_area, py::arg("kind"), py::arg("a"),
        py::arg("b"), py::arg("c"));
  m.def("curvature", &curvature, py::arg("tri"), py::arg("metric"),
        "Per-vertex combinatorial curvature 2*pi - cone angle.");
  m.def("total_area", &total_area, py::arg("tri"), py::arg("metric"));
  m.def("gauss_bonnet_residual", &gauss_bonnet_residual, py::arg("tri"),
        py::arg("metric"));
  m.def("delaunay_margin", &delaunay_margin, py::arg("tri"), py::arg("metric"),
        py::arg("edge"),
        "Slack of the Delaunay condition; positive when strictly Delaunay.");
  m.def("is_delaunay_edge", &is_delaunay_edge, py::arg("tri"),
        py::arg("metric"), py::arg("edge"), py::arg("eps_del") = kEpsDel);
  m.def(
      "vertex_scale",
      [](const Triangulation& t, const PolyhedralMetric& metric,
         const VertexVector& du) {
        ScaledMetric s = vertex_scale(t, metric, du);
        return py::make_tuple(s.metric, s.admissible, s.violating_faces);
      },
      py::arg("tri"), py::arg("metric"), py::arg("du"),
      "Conformal scaling by the per-vertex factor du. Returns "
      "(metric, admissible, violating_faces).");

  // --- curvature Jacobian / discrete Laplacian ---
  m.def(
      "curvature_jacobian",
      [](const Triangulation& t, const PolyhedralMetric& metric) {
        return curvature_jacobian(t, metric).L;
      },
      py::arg("tri"), py::arg("metric"),
      "Matrix L with L_ij = dK_i/du_j on the current triangulation "
      "(geometry chosen by the metric).");

  // --- flow engine ---
  py::class_<FlowConfig>(m, "FlowConfig")
      .def(py::init<>())
      .def_readwrite("dt_init", &FlowConfig::dt_init)
      .def_readwrite("dt_min", &FlowConfig::dt_min)
      .def_readwrite("dt_max", &FlowConfig::dt_max)
      .def_readwrite("tol_curv", &FlowConfig::tol_curv)
      .def_readwrite("t_max", &FlowConfig::t_max)
      .def_readwrite("backtrack_factor", &FlowConfig::backtrack_factor)
      .def_readwrite("grow_factor", &FlowConfig::grow_factor)
      .def_readwrite("max_flips_per_sweep", &FlowConfig::max_flips_per_sweep);

  py::class_<FlowState>(m, "FlowState")
      .def_readonly("t", &FlowState::t)
      .def_readonly("tri", &FlowState::tri)
      .def_readonly("metric", &FlowState::metric)
      .def_readonly("u", &FlowState::u)
      .def_readonly("target", &FlowState::target)
      .def_readonly("cumulative_flips", &FlowState::cumulative_flips);

  py::class_<FlowTraceRecord>(m, "FlowTraceRecord")
      .def_readonly("t", &FlowTraceRecord::t)
      .def_readonly("dt", &FlowTraceRecord::dt)
      .def_readonly("calabi_energy", &FlowTraceRecord::calabi_energy)
      .def_readonly("max_abs_curv_err", &FlowTraceRecord::max_abs_curv_err)
      .def_readonly("flips_step", &FlowTraceRecord::flips_step)
      .def_readonly("flips_cum", &FlowTraceRecord::flips_cum)
      .def_readonly("sum_u", &FlowTraceRecord::sum_u);

  py::enum_<FlowStatus>(m, "FlowStatus")
      .value("converged", FlowStatus::Converged)
      .value("max_time_exceeded", FlowStatus::MaxTimeExceeded)
      .value("step_collapse", FlowStatus::StepCollapse);

  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("state", &FlowResult::state)
      .def_readonly("trace", &FlowResult::trace)
      .def_readonly("status", &FlowResult::status)
      .def_property_readonly("converged", [](const FlowResult& r) {
        return r.status == FlowStatus::Converged;
      });

  m.def("validate_target", &validate_target, py::arg("kind"), py::arg("tri"),
        py::arg("target"),
        "Checks the existence conditions; returns the target actually "
        "flowed to (Euclidean targets are projected onto sum = 2*pi*chi).");
  m.def(
      "make_delaunay",
      [](const Triangulation& tri, const PolyhedralMetric& metric,
         const FlowConfig& cfg) {
        FlowState state;
        state.tri = tri;
        state.metric = metric;
        state.u = VertexVector::Zero(tri.n_vertices());
        state.target = VertexVector::Zero(tri.n_vertices());
        long flips = make_delaunay(state, cfg);
        return py::make_tuple(state.tri, state.metric, flips);
      },
      py::arg("tri"), py::arg("metric"), py::arg("cfg") = FlowConfig(),
      "Lawson flip sweep to an intrinsic Delaunay triangulation. Returns "
      "(tri, metric, flips); the metric is unchanged as a metric space.");
  m.def(
      "run_flow",
      [](const Triangulation& tri, const PolyhedralMetric& metric,
         const VertexVector& target, const FlowConfig& cfg,
         std::optional<VertexVector> u0) {
        return run_flow(tri, metric, target, cfg, nullptr,
                        u0 ? &*u0 : nullptr);
      },
      py::arg("tri"), py::arg("metric"), py::arg("target"),
      py::arg("cfg") = FlowConfig(), py::arg("u0") = py::none(),
      "Integrate du/dt = -L (K - K*) with Delaunay surgery until "
      "max |K - K*| < tol_curv. With u0 the flow starts at "
      "vertex_scale(metric, u0) and u(0) = u0.");

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("slope", &DecayFit::slope)
      .def_readonly("r_squared", &DecayFit::r_squared)
      .def_readonly("n_points", &DecayFit::n_points);
  m.def("estimate_decay_rate", &estimate_decay_rate, py::arg("trace"),
        "Least-squares slope of ln(Calabi energy) against flow time over "
        "the later half of the trace.");

  // --- file formats ---
  m.def(
      "read_metric",
      [](const std::string& path) {
        MetricData md = read_metric(path);
        return py::make_tuple(md.tri, md.metric);
      },
      py::arg("path"), "Reads a metric file; returns (tri, metric).");
  m.def("write_metric", &write_metric, py::arg("path"), py::arg("tri"),
        py::arg("metric"));
  m.def("format_metric", &format_metric, py::arg("tri"), py::arg("metric"));
  m.def("read_target", &read_target, py::arg("path"), py::arg("kind"),
        py::arg("tri"));
  m.def("write_trace_csv", &write_trace_csv, py::arg("path"),
        py::arg("trace"));
  m.def("read_trace_csv", &read_trace_csv, py::arg("path"));
  m.def("import_obj", &import_obj, py::arg("path"),
        "Converts a triangle OBJ to Euclidean metric-file text.");
}
