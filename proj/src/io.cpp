#include "calabiflow/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace calabiflow {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line,
                             const std::string& reason) {
  fail(ErrorCode::ParseError,
       name + ":" + std::to_string(line) + ": " + reason);
}

// Whole-token numeric parsing; trailing junk is an error.
double parse_double(const std::string& name, int line, const std::string& tok,
                    const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected a finite " + what + ", got '" + tok + "'");
  }
}

long parse_int(const std::string& name, int line, const std::string& tok,
               const std::string& what) {
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected an integer " + what + ", got '" + tok + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Strip a '#' comment and split the rest into whitespace tokens.
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> toks;
  std::string tok;
  while (ss >> tok) toks.push_back(tok);
  return toks;
}

// write-temp-then-rename so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorCode::ParseError, "cannot open '" + tmp + "' for writing");
    }
    out << content;
    if (!out.flush()) {
      fail(ErrorCode::ParseError, "failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    fail(ErrorCode::ParseError,
         "cannot move '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

std::string slurp_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

} // namespace

MetricData parse_metric(std::istream& in, const std::string& name) {
  std::optional<GeometryKind> kind;
  std::optional<int> nv;
  std::vector<std::pair<long, double>> edges;
  std::vector<std::array<int, 6>> face_rows;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& tag = toks[0];
    if (tag == "geometry") {
      if (toks.size() != 2) parse_fail(name, lineno, "geometry needs one word");
      if (toks[1] == "euclidean") {
        kind = GeometryKind::Euclidean;
      } else if (toks[1] == "hyperbolic") {
        kind = GeometryKind::Hyperbolic;
      } else {
        parse_fail(name, lineno,
                   "geometry must be 'euclidean' or 'hyperbolic', got '" +
                       toks[1] + "'");
      }
    } else if (tag == "nv") {
      if (toks.size() != 2) parse_fail(name, lineno, "nv needs one count");
      long v = parse_int(name, lineno, toks[1], "vertex count");
      if (v <= 0) parse_fail(name, lineno, "vertex count must be positive");
      nv = static_cast<int>(v);
    } else if (tag == "e") {
      if (toks.size() != 3) {
        parse_fail(name, lineno, "edge line is 'e <id> <length>'");
      }
      long id = parse_int(name, lineno, toks[1], "edge id");
      double len = parse_double(name, lineno, toks[2], "length");
      if (!(len > 0.0)) {
        parse_fail(name, lineno,
                   "edge length must be positive, got " + toks[2]);
      }
      edges.emplace_back(id, len);
    } else if (tag == "f") {
      if (toks.size() != 7) {
        parse_fail(name, lineno,
                   "face line is 'f <v0> <v1> <v2> <e0> <e1> <e2>'");
      }
      std::array<int, 6> row;
      for (int i = 0; i < 6; ++i) {
        row[i] = static_cast<int>(parse_int(
            name, lineno, toks[1 + i], i < 3 ? "vertex id" : "edge id"));
      }
      face_rows.push_back(row);
    } else {
      parse_fail(name, lineno, "unknown directive '" + tag + "'");
    }
  }
  if (!kind) parse_fail(name, lineno, "missing 'geometry' line");
  if (!nv) parse_fail(name, lineno, "missing 'nv' line");

  const int ne = static_cast<int>(edges.size());
  std::vector<double> lengths(ne, 0.0);
  std::vector<bool> seen(ne, false);
  for (const auto& [id, len] : edges) {
    if (id < 0 || id >= ne) {
      fail(ErrorCode::ParseError,
           name + ": edge ids must be dense 0.." + std::to_string(ne - 1) +
               ", got " + std::to_string(id));
    }
    if (seen[id]) {
      fail(ErrorCode::ParseError,
           name + ": duplicate edge id " + std::to_string(id));
    }
    seen[id] = true;
    lengths[id] = len;
  }

  MetricData data;
  data.tri = Triangulation::build_from_faces(face_rows, *nv, ne);
  data.metric.kind = *kind;
  data.metric.lengths = std::move(lengths);

  Admissibility adm = admissibility(data.tri, data.metric);
  if (!adm.ok) {
    std::string faces;
    for (FaceId f : adm.violating_faces) {
      faces += (faces.empty() ? "" : ", ") + std::to_string(f);
    }
    fail(ErrorCode::DegenerateTriangle,
         name + ": triangle inequality fails on face(s) " + faces);
  }
  return data;
}

MetricData read_metric(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  return parse_metric(in, slurp_name(path));
}

std::string format_metric(const Triangulation& t, const PolyhedralMetric& m) {
  std::string out;
  out += std::string("geometry ") + geometry_kind_name(m.kind) + "\n";
  out += "nv " + std::to_string(t.n_vertices()) + "\n";
  for (EdgeId e = 0; e < t.n_edges(); ++e) {
    out += "e " + std::to_string(e) + " " + fmt17(m.lengths[e]) + "\n";
  }
  for (FaceId f = 0; f < t.n_faces(); ++f) {
    const Face& face = t.face(f);
    out += "f";
    for (int c = 0; c < 3; ++c) out += " " + std::to_string(face.corners[c].vertex);
    for (int c = 0; c < 3; ++c) {
      out += " " + std::to_string(face.corners[c].opposite_edge);
    }
    out += "\n";
  }
  return out;
}

void write_metric(const std::string& path, const Triangulation& t,
                  const PolyhedralMetric& m) {
  write_atomic(path, format_metric(t, m));
}

VertexVector read_target(const std::string& path, GeometryKind kind,
                         const Triangulation& t) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  const std::string name = slurp_name(path);
  const int n = t.n_vertices();
  double fallback = kind == GeometryKind::Euclidean
                        ? 2.0 * std::numbers::pi * t.euler_characteristic() / n
                        : 0.0;
  VertexVector target = VertexVector::Constant(n, fallback);
  std::vector<bool> given(n, false);

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "k" || toks.size() != 3) {
      parse_fail(name, lineno, "target line is 'k <vertex-id> <value>'");
    }
    long vid = parse_int(name, lineno, toks[1], "vertex id");
    if (vid < 0 || vid >= n) {
      parse_fail(name, lineno,
                 "vertex id " + std::to_string(vid) + " outside 0.." +
                     std::to_string(n - 1));
    }
    if (given[vid]) {
      parse_fail(name, lineno,
                 "duplicate target for vertex " + std::to_string(vid));
    }
    given[vid] = true;
    target[vid] = parse_double(name, lineno, toks[2], "curvature");
  }
  return target;
}

void write_trace_csv(const std::string& path,
                     const std::vector<FlowTraceRecord>& trace) {
  std::string out =
      "t,dt,calabi_energy,max_abs_curv_err,flips_step,flips_cum,sum_u\n";
  for (const FlowTraceRecord& rec : trace) {
    out += fmt17(rec.t) + "," + fmt17(rec.dt) + "," +
           fmt17(rec.calabi_energy) + "," + fmt17(rec.max_abs_curv_err) + "," +
           std::to_string(rec.flips_step) + "," +
           std::to_string(rec.flips_cum) + "," + fmt17(rec.sum_u) + "\n";
  }
  write_atomic(path, out);
}

std::vector<FlowTraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  const std::string name = slurp_name(path);
  std::string line;
  if (!std::getline(in, line)) {
    fail(ErrorCode::ParseError, name + ": empty trace file");
  }
  if (line ==
      "t,dt,calabi_energy,max_abs_curv_err,flips_step,flips_cum,sum_u\r") {
    line.pop_back();
  }
  if (line != "t,dt,calabi_energy,max_abs_curv_err,flips_step,flips_cum,sum_u") {
    fail(ErrorCode::ParseError, name + ": unexpected header '" + line + "'");
  }
  std::vector<FlowTraceRecord> trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() != 7) {
      parse_fail(name, lineno, "expected 7 comma-separated columns");
    }
    FlowTraceRecord rec;
    rec.t = parse_double(name, lineno, cols[0], "time");
    rec.dt = parse_double(name, lineno, cols[1], "time step");
    rec.calabi_energy = parse_double(name, lineno, cols[2], "energy");
    rec.max_abs_curv_err = parse_double(name, lineno, cols[3], "error");
    rec.flips_step = parse_int(name, lineno, cols[4], "flip count");
    rec.flips_cum = parse_int(name, lineno, cols[5], "flip count");
    rec.sum_u = parse_double(name, lineno, cols[6], "sum of u");
    trace.push_back(rec);
  }
  return trace;
}

void write_conformal_factor(const std::string& path, const VertexVector& u) {
  std::string out;
  for (int i = 0; i < u.size(); ++i) {
    out += "u " + std::to_string(i) + " " + fmt17(u[i]) + "\n";
  }
  write_atomic(path, out);
}

std::string import_obj(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  const std::string name = slurp_name(path);
  std::vector<std::array<double, 3>> positions;
  std::vector<std::array<VertexId, 3>> tris;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "v") {
      if (toks.size() < 4) parse_fail(name, lineno, "vertex needs x y z");
      positions.push_back({parse_double(name, lineno, toks[1], "coordinate"),
                           parse_double(name, lineno, toks[2], "coordinate"),
                           parse_double(name, lineno, toks[3], "coordinate")});
    } else if (toks[0] == "f") {
      if (toks.size() > 4) {
        fail(ErrorCode::NonTriangleFace,
             name + ":" + std::to_string(lineno) + ": face with " +
                 std::to_string(toks.size() - 1) + " vertices");
      }
      if (toks.size() < 4) parse_fail(name, lineno, "face needs 3 vertices");
      std::array<VertexId, 3> tri;
      for (int i = 0; i < 3; ++i) {
        // OBJ corners may be v, v/vt, v/vt/vn or v//vn; the vertex index
        // is the part before the first slash. Negative means relative.
        std::string head = toks[1 + i].substr(0, toks[1 + i].find('/'));
        long idx = parse_int(name, lineno, head, "vertex index");
        if (idx < 0) idx += static_cast<long>(positions.size()) + 1;
        if (idx < 1 || idx > static_cast<long>(positions.size())) {
          parse_fail(name, lineno,
                     "vertex index " + head + " out of range");
        }
        tri[i] = static_cast<VertexId>(idx - 1);
      }
      tris.push_back(tri);
    }
    // all other OBJ directives (vn, vt, g, s, usemtl, ...) are ignored
  }
  if (positions.empty() || tris.empty()) {
    fail(ErrorCode::ParseError, name + ": no triangles found");
  }

  Triangulation tri = Triangulation::build_from_faces(
      tris, static_cast<int>(positions.size()));
  PolyhedralMetric metric;
  metric.kind = GeometryKind::Euclidean;
  metric.lengths.resize(tri.n_edges());
  for (EdgeId e = 0; e < tri.n_edges(); ++e) {
    auto [a, b] = tri.edge_endpoints(e);
    double dx = positions[a][0] - positions[b][0];
    double dy = positions[a][1] - positions[b][1];
    double dz = positions[a][2] - positions[b][2];
    double len = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(len > 0.0)) {
      fail(ErrorCode::ParseError,
           name + ": vertices " + std::to_string(a) + " and " +
               std::to_string(b) + " coincide");
    }
    metric.lengths[e] = len;
  }
  Admissibility adm = admissibility(tri, metric);
  if (!adm.ok) {
    fail(ErrorCode::DegenerateTriangle,
         name + ": " + std::to_string(adm.violating_faces.size()) +
             " degenerate face(s) in the embedding");
  }
  return format_metric(tri, metric);
}

namespace {

int cmd_validate(const std::string& path) {
  MetricData md = read_metric(path);
  std::cout << "geometry " << geometry_kind_name(md.metric.kind) << "\n"
            << "nv " << md.tri.n_vertices() << "\n"
            << "ne " << md.tri.n_edges() << "\n"
            << "nf " << md.tri.n_faces() << "\n"
            << "chi " << md.tri.euler_characteristic() << "\n"
            << "gauss_bonnet_residual "
            << fmt17(gauss_bonnet_residual(md.tri, md.metric)) << "\n";
  return 0;
}

int cmd_curvature(const std::string& path) {
  MetricData md = read_metric(path);
  VertexVector K = curvature(md.tri, md.metric);
  for (int i = 0; i < K.size(); ++i) {
    std::cout << "K " << i << " " << fmt17(K[i]) << "\n";
  }
  std::cout << "sum " << fmt17(K.sum()) << "\n";
  return 0;
}

int cmd_delaunay(const std::string& path, bool fix, const std::string& out) {
  MetricData md = read_metric(path);
  int violations = 0;
  for (EdgeId e = 0; e < md.tri.n_edges(); ++e) {
    if (!is_delaunay_edge(md.tri, md.metric, e)) {
      std::cout << "edge " << e << " margin "
                << fmt17(delaunay_margin(md.tri, md.metric, e)) << "\n";
      ++violations;
    }
  }
  std::cout << "non_delaunay " << violations << "\n";
  if (fix) {
    FlowState state;
    state.tri = std::move(md.tri);
    state.metric = std::move(md.metric);
    state.u = VertexVector::Zero(state.tri.n_vertices());
    state.target = VertexVector::Zero(state.tri.n_vertices());
    long flips = make_delaunay(state);
    std::cout << "flips " << flips << "\n";
    write_metric(out, state.tri, state.metric);
  }
  return 0;
}

int cmd_flow(const std::string& path, const std::string& target_path,
             bool constant, const FlowConfig& cfg,
             const std::string& trace_path, const std::string& out_path) {
  if (constant == !target_path.empty()) {
    fail(ErrorCode::ParseError,
         "pass exactly one of --target <file> or --constant");
  }
  MetricData md = read_metric(path);
  VertexVector target;
  if (constant) {
    // Constant-curvature mode: the only admissible constant. Euclidean:
    // 2*pi*chi/n by Gauss-Bonnet; hyperbolic: 0, which needs chi < 0.
    const int n = md.tri.n_vertices();
    double value = md.metric.kind == GeometryKind::Euclidean
                       ? 2.0 * std::numbers::pi *
                             md.tri.euler_characteristic() / n
                       : 0.0;
    target = VertexVector::Constant(n, value);
  } else {
    target = read_target(target_path, md.metric.kind, md.tri);
  }

  FlowResult result = run_flow(md.tri, md.metric, target, cfg);

  if (!trace_path.empty()) write_trace_csv(trace_path, result.trace);
  if (!out_path.empty()) {
    write_metric(out_path, result.state.tri, result.state.metric);
    write_conformal_factor(out_path + ".u", result.state.u);
  }
  const FlowTraceRecord& last = result.trace.back();
  std::cout << "status " << flow_status_name(result.status) << "\n"
            << "t " << fmt17(result.state.t) << "\n"
            << "steps " << result.trace.size() - 1 << "\n"
            << "flips " << result.state.cumulative_flips << "\n"
            << "max_abs_curv_err " << fmt17(last.max_abs_curv_err) << "\n"
            << "calabi_energy " << fmt17(last.calabi_energy) << "\n";
  switch (result.status) {
    case FlowStatus::Converged: return 0;
    case FlowStatus::MaxTimeExceeded: return 2;
    case FlowStatus::StepCollapse: return 1;
  }
  return 1;
}

int cmd_decay(const std::string& path) {
  DecayFit fit = estimate_decay_rate(read_trace_csv(path));
  std::cout << "slope " << fmt17(fit.slope) << "\n"
            << "r_squared " << fmt17(fit.r_squared) << "\n"
            << "n_points " << fit.n_points << "\n";
  return 0;
}

int cmd_import_obj(const std::string& path, const std::string& out) {
  std::string content = import_obj(path);
  if (out.empty()) {
    std::cout << content;
  } else {
    write_atomic(out, content);
  }
  return 0;
}

} // namespace

int cli(int argc, const char* const* argv) {
  CLI::App app{
      "Polyhedral metrics with prescribed cone curvature via "
      "discretely-conformal curvature flow with Delaunay surgery"};
  app.require_subcommand(1);

  std::string metric_path, target_path, trace_path, out_path;
  bool fix = false, constant = false;
  FlowConfig cfg;

  auto* validate = app.add_subcommand(
      "validate", "Check structure and admissibility of a metric file");
  validate->add_option("metric", metric_path, "metric file")->required();

  auto* curv = app.add_subcommand(
      "curvature", "Print per-vertex combinatorial curvature");
  curv->add_option("metric", metric_path, "metric file")->required();

  auto* del = app.add_subcommand(
      "delaunay", "List non-Delaunay edges; optionally flip them away");
  del->add_option("metric", metric_path, "metric file")->required();
  auto* fix_flag =
      del->add_flag("--fix", fix, "run the flip sweep and write the result");
  del->add_option("--out", out_path, "output metric file")->needs(fix_flag);
  fix_flag->needs(del->get_option("--out"));

  auto* flow = app.add_subcommand(
      "flow", "Flow the metric to a target curvature");
  flow->add_option("metric", metric_path, "metric file")->required();
  flow->add_option("--target", target_path, "target curvature file");
  flow->add_flag("--constant", constant,
                 "target the admissible constant curvature");
  flow->add_option("--tol", cfg.tol_curv, "convergence on max |K - K*|");
  flow->add_option("--dt", cfg.dt_init, "initial time step");
  flow->add_option("--t-max", cfg.t_max, "flow-time limit");
  flow->add_option("--trace", trace_path, "write the step trace CSV here");
  flow->add_option("--out", out_path,
                   "write the final metric here (plus '<out>.u' sidecar)");

  auto* decay = app.add_subcommand(
      "decay", "Fit the exponential decay rate of a trace CSV");
  decay->add_option("trace", trace_path, "trace CSV file")->required();

  auto* imp = app.add_subcommand(
      "import-obj", "Convert a triangle OBJ to a Euclidean metric file");
  imp->add_option("obj", metric_path, "OBJ file")->required();
  imp->add_option("--out", out_path, "output metric file (default: stdout)");

  try {
    app.parse(argc, argv);
    if (validate->parsed()) return cmd_validate(metric_path);
    if (curv->parsed()) return cmd_curvature(metric_path);
    if (del->parsed()) return cmd_delaunay(metric_path, fix, out_path);
    if (flow->parsed()) {
      return cmd_flow(metric_path, target_path, constant, cfg, trace_path,
                      out_path);
    }
    if (decay->parsed()) return cmd_decay(trace_path);
    if (imp->parsed()) return cmd_import_obj(metric_path, out_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace calabiflow
