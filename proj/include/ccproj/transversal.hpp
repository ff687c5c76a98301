#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ccproj/fan.hpp"

namespace ccproj {

// ------------------------------------------------------------ convex solver

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;        // best objective seen
  double lower_bound = 0.0;  // certified lower bound on the minimum
  int iterations = 0;
  bool converged = false;
};

/// f(x, grad) returns the value and writes a subgradient.
using ConvexObjective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Central-cut ellipsoid method started from the ball B(x0, radius), which
/// must contain a minimizer. Stops when value - lower_bound <= tol, when a
/// zero subgradient is met, or after max_iter cuts. Dimension must be >= 2.
MinimizeResult minimize_convex(const ConvexObjective& f, const Eigen::VectorXd& x0, double radius,
                               double tol, int max_iter = 50000);

// ------------------------------------------------------------------ lines

/// A line disjoint from L, stored by its traces at two reference pencil
/// parameters in a chart whose infinity plane is plane(chart_phi).
struct LineParam {
  double u1 = 0, v1 = 0, u2 = 0, v2 = 0;
};

/// Chart factor: chart coordinates of section point p at theta are p / sin(phi - theta).
inline double chart_factor(double phi, double theta) { return std::sin(phi - theta); }

struct ParamChart {
  double phi = 0.0;                  // infinity plane = plane(phi)
  double theta_ref1 = 0, theta_ref2 = 0;

  LineParam to_param(const Mat2& M) const;
  Mat2 to_matrix(const LineParam& q) const;
  /// Affine chart of RP^3 realizing this parametrization.
  Chart chart(const PencilFrame& frame) const;
};

struct TransversalLine {
  ProjLine line;
  Mat2 M = Mat2::Zero();             // traces p(theta) = M unit_normal(theta)
  std::vector<double> residuals;     // per selected section, chart units
  std::vector<std::size_t> indices;  // which samples
  ParamChart chart;
  double value = 0.0;                // max residual
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;

  /// Number of residuals within eps of the maximum.
  int active_count(double eps = 1e-6) const;
};

/// Chebyshev objective: max over sections of chart distance from the trace to the section.
double chebyshev_objective(const SectionFan& fan, const std::vector<std::size_t>& subset, double phi,
                           const Mat2& M, Mat2* grad = nullptr);

/// Solver chart for a subset: infinity plane at the midpoint of the largest gap.
/// Throws NoAdmissibleChart when a section is unbounded or parameters repeat.
ParamChart solver_chart(const SectionFan& fan, const std::vector<std::size_t>& subset);

struct ChebyshevOptions {
  int starts = 1;          // >1 adds random restarts
  std::uint64_t seed = 1;  // for restarts
  double tol = -1.0;       // defaults to tol_solver
  int max_iter = 50000;
};

TransversalLine chebyshev_line(const SectionFan& fan, const std::vector<std::size_t>& subset = {},
                               const ChebyshevOptions& opt = {},
                               const Tolerances& tol = Tolerances::defaults());

/// Per-start optimal values, for agreement checks.
std::vector<double> chebyshev_multistart_values(const SectionFan& fan, int starts, std::uint64_t seed,
                                                const Tolerances& tol = Tolerances::defaults());

struct HellyReport {
  std::size_t subsets_checked = 0;
  std::size_t subsets_total = 0;
  bool sampled = false;
  double max_subset_residual = 0.0;
  double full_residual = 0.0;
  bool in_scope = false;    // fan validates
  bool consistent = false;  // all subsets small => full small
  double tol = 0.0;
};

/// Chebyshev residuals of every 5-subset (or `cap` random ones) and of the full fan.
HellyReport helly_verify(const SectionFan& fan, std::size_t cap = 500, std::uint64_t seed = 1,
                         double tol = 1e-6, const Tolerances& tols = Tolerances::defaults());

struct BrowderResult {
  bool converged = false;
  int iterations = 0;
  double last_step = 0.0;
  std::optional<TransversalLine> line;
};

/// Fixed-point iteration a1 -> a1' on four sections. Throws EmptySelection
/// when an intermediate admissible set is empty.
BrowderResult browder_four_sections(const PencilFrame& frame, const std::array<Section, 4>& sections,
                                    const Tolerances& tol = Tolerances::defaults());

/// Browder on four samples, falling back to chebyshev_line on non-convergence.
struct FourSectionLine {
  TransversalLine line;
  bool used_fallback = false;
  int browder_iterations = 0;
};
FourSectionLine four_section_line(const SectionFan& fan, const std::array<std::size_t, 4>& idx,
                                  const Tolerances& tol = Tolerances::defaults());

struct Certificate {
  bool contained = false;
  bool meets_L = false;
  std::vector<double> residuals;
  std::vector<std::size_t> failing;
  double max_residual = 0.0;
  double threshold = 0.0;
};

/// A line disjoint from L lies in the body iff it meets every sample section.
/// Threshold: eps_certify * max(1, chart diameter).
Certificate certify_line(const SectionFan& fan, const ProjLine& line,
                         const Tolerances& tol = Tolerances::defaults());
Certificate certify_matrix(const SectionFan& fan, const Mat2& M,
                           const Tolerances& tol = Tolerances::defaults());

/// Half-plane {<normal, x> <= offset} of the section plane at theta whose
/// boundary supports the section.
struct SupportHalfPlane {
  double theta = 0.0;
  HalfPlane hp;
};

/// Boundary direction on L of a half-plane (the angle d with normal = +-unit_normal(d)).
double boundary_direction(const HalfPlane& hp);

struct HalfPlaneTransversal {
  TransversalLine line;
  std::array<double, 4> directions{};
  std::vector<Vec2> hits;       // trace of the line in each half-plane's plane
  std::vector<double> margins;  // offset - <normal, hit>, >= 0 when met
  bool used_fallback = false;
};

/// Line meeting every supporting half-plane when their boundaries meet L in
/// at most four points. Throws NotSupporting or TooManyDirections.
HalfPlaneTransversal support_halfplane_transversal(const SectionFan& fan,
                                                   const std::vector<SupportHalfPlane>& halfplanes,
                                                   const Tolerances& tol = Tolerances::defaults());

}  // namespace ccproj
