#pragma once

#include <stdexcept>
#include <string>

namespace ccproj {

/// Tolerance policy shared by every geometric predicate.
///
/// All values are relative: callers scale them by the magnitude of the
/// quantities being compared (vector norms for incidence, polygon diameter
/// for planar comparisons).
struct Tolerances {
  double eps_incid = 1e-9;    // |<plane, point>| <= eps_incid * |plane| * |point|
  double eps_rank = 1e-9;     // sigma_min / sigma_max threshold
  double eps_convex = 1e-9;   // planar comparisons, times diameter
  double eps_dual = 1e-6;     // sectionwise Hausdorff agreement for dual checks
  double eps_affine = 1e-6;   // Minkowski-combination agreement
  double eps_certify = 1e-6;  // residual threshold for line containment
  double tol_solver = 1e-7;   // objective gap for the minimax solver
  double tol_fp = 1e-9;       // fixed-point step threshold (Browder iteration)
  int max_iter_fp = 500;
  int n_centers = 16;         // concavity validation: centers on L
  int n_probe = 64;           // concavity validation: probes per segment

  /// Process-wide default.
  static const Tolerances& defaults();
};

enum class ErrorCode {
  DegenerateInput,
  AtInfinity,
  RefNotInterior,
  DegenerateSupport,
  DegenerateQuadrangle,
  DuplicateDirections,
  CenterNotOnL,
  InvalidInput,
  IntersectsDualL,
  NoAdmissibleChart,
  EmptySelection,
  NotSupporting,
  TooManyDirections,
  NonIntervalEmptySet,
};

const char* to_string(ErrorCode code);

/// Geometric precondition failure.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ccproj
