#pragma once

#include <stdexcept>
#include <string>

namespace calabiflow {

// Every failure mode the library reports. Codes are part of the public
// contract: the CLI prints them verbatim and tests match on them.
enum class ErrorCode {
  OpenSurface,            // an edge with fewer than two face incidences
  NonManifoldEdge,        // an edge with more than two face incidences
  AmbiguousEdges,         // implicit edge matching on a complex that needs explicit ids
  UnflippableSelfGlued,   // both sides of the edge lie in one face
  DegenerateTriangle,     // triangle inequality violated (within tolerance)
  FlipProducesDegenerate, // flipped diagonal would create an invalid triangle
  DimensionMismatch,      // vector/matrix size disagreement
  InadmissibleTarget,     // target curvature violates the existence conditions
  FlipBudgetExceeded,     // Delaunay sweep exceeded max_flips_per_sweep
  StepCollapse,           // time step fell below dt_min without acceptance
  InsufficientTrace,      // too few usable records for a decay fit
  NonTriangleFace,        // mesh import hit a non-triangular face
  ParseError,             // malformed input file
};

const char* error_code_name(ErrorCode code);

// Single exception type carrying a machine-readable code plus a human
// message. what() is "<CodeName>: <message>".
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace calabiflow
