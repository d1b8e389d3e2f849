#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "calabiflow/flow.hpp"
#include "calabiflow/geometry.hpp"
#include "calabiflow/triangulation.hpp"

namespace calabiflow {

// Metric file format (text, '#' comments and blank lines ignored):
//   geometry euclidean|hyperbolic
//   nv <vertex count>
//   e <edge-id> <length>            one line per edge, ids dense from 0
//   f <v0> <v1> <v2> <e0> <e1> <e2> corner vertices + opposite edge ids
// Lengths are printed with 17 significant digits so files round-trip
// bit-exactly.
struct MetricData {
  Triangulation tri;
  PolyhedralMetric metric;
};

MetricData parse_metric(std::istream& in, const std::string& name);
MetricData read_metric(const std::string& path);
std::string format_metric(const Triangulation& t, const PolyhedralMetric& m);
void write_metric(const std::string& path, const Triangulation& t,
                  const PolyhedralMetric& m);

// Target file: lines `k <vertex-id> <value>`. Omitted vertices default to
// the constant-curvature value 2*pi*chi/n (Euclidean) or 0 (hyperbolic).
VertexVector read_target(const std::string& path, GeometryKind kind,
                         const Triangulation& t);

// Trace CSV, exact column order:
// t,dt,calabi_energy,max_abs_curv_err,flips_step,flips_cum,sum_u
void write_trace_csv(const std::string& path,
                     const std::vector<FlowTraceRecord>& trace);
std::vector<FlowTraceRecord> read_trace_csv(const std::string& path);

// Conformal factor sidecar: lines `u <vertex-id> <value>`.
void write_conformal_factor(const std::string& path, const VertexVector& u);

// Wavefront OBJ (triangles, positions only) -> Euclidean metric file
// content, with edge lengths taken from 3-space distances. The surface
// must be closed and free of multi-edges (OBJ has no way to express them).
std::string import_obj(const std::string& path);

// Command-line entry point; argv[0] is the program name. Returns the
// process exit status: 0 success/converged, 2 flow did not converge,
// 1 any error (message on stderr as "error: <Code>: <reason>").
int cli(int argc, const char* const* argv);

} // namespace calabiflow
