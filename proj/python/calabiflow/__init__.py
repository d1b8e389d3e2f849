"""Polyhedral metrics with prescribed cone curvature.

Computes discretely-conformal deformations of piecewise-flat and
piecewise-hyperbolic cone metrics on closed triangulated surfaces by a
curvature flow that keeps the triangulation intrinsically Delaunay
through edge flips (surgery).
"""

from ._core import (
    CalabiflowError,
    DecayFit,
    FlowConfig,
    FlowResult,
    FlowState,
    FlowStatus,
    FlowTraceRecord,
    GeometryKind,
    PolyhedralMetric,
    Triangulation,
    curvature,
    curvature_jacobian,
    delaunay_margin,
    estimate_decay_rate,
    format_metric,
    gauss_bonnet_residual,
    import_obj,
    is_delaunay_edge,
    make_delaunay,
    read_metric,
    read_target,
    read_trace_csv,
    run_flow,
    total_area,
    triangle_angles,
    triangle_area,
    validate_target,
    vertex_scale,
    write_metric,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CalabiflowError",
    "DecayFit",
    "FlowConfig",
    "FlowResult",
    "FlowState",
    "FlowStatus",
    "FlowTraceRecord",
    "GeometryKind",
    "PolyhedralMetric",
    "Triangulation",
    "curvature",
    "curvature_jacobian",
    "delaunay_margin",
    "estimate_decay_rate",
    "format_metric",
    "gauss_bonnet_residual",
    "import_obj",
    "is_delaunay_edge",
    "make_delaunay",
    "read_metric",
    "read_target",
    "read_trace_csv",
    "run_flow",
    "total_area",
    "triangle_angles",
    "triangle_area",
    "validate_target",
    "vertex_scale",
    "write_metric",
    "write_trace_csv",
]
