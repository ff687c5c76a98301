#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "ccproj/fan.hpp"

namespace ccproj {

/// Malformed scene text or unreadable file (CLI exit code 2).
class SceneFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scene {
  SectionFan fan;
  std::map<std::string, double> tolerance_overrides;  // as read from / written to the file
  std::uint64_t seed = 0;

  const PencilFrame& frame() const { return fan.frame(); }
  /// Defaults with the file overrides applied.
  Tolerances tolerances() const;
};

/// Scene text: JSON with keys "frame", "samples", "tolerances", "seed".
/// Numbers are printed with 17 significant digits, so parse(write(s))
/// reproduces every double exactly.
std::string write_scene(const Scene& scene);
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);
void save_scene(const std::string& path, const Scene& scene);

/// Known tolerance names ("eps_incid", ..., "n_probe").
bool set_tolerance(Tolerances& t, const std::string& name, double value);

/// Precedence: flag > CCPROJ_TOL > scene file > default. CCPROJ_TOL and the
/// flag set eps_certify. Throws SceneFormatError on an unparsable CCPROJ_TOL.
Tolerances resolve_tolerances(const Scene* scene, std::optional<double> flag);

enum class QuadricMode { Inscribed, Circumscribed };

/// Fan of A = {x0^2 + x1^2 <= x2^2 + x3^2} over L = span(e0, e1): every
/// section is the unit disk in section coordinates, approximated by a
/// regular m-gon; samples at theta_i = i pi / k (chart height w = -tan theta).
Scene gen_quadric(int k, int m, QuadricMode mode = QuadricMode::Inscribed);

/// Chart x3 = 1 coordinates (u, v, w) of section point p at theta (standard frame).
Vec3 quadric_chart_point(double theta, const Vec2& p);

/// Random valid fan: a polygonized random quadric of signature (2, 2) that is
/// positive on L, followed by `complexity` random S- and P-surgeries.
/// Deterministic in the seed.
Scene gen_random_fan(std::uint64_t seed, int k, int complexity);

/// gen_random_fan octagonalized with four random direction classes.
Scene gen_octagon_fan(std::uint64_t seed, int k, std::array<double, 4>* dirs_out = nullptr);

/// "ccmesh 1" text: boundary surface lofted across gaps in unrolled
/// coordinates (p0, p1, theta), closed at theta_0 and theta_0 + pi by caps.
std::string mesh_text(const SectionFan& fan, int ring = 64);

}  // namespace ccproj
