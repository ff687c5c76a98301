#include "ccproj/scene.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ccproj/surgery.hpp"

namespace ccproj {

namespace {

using nlohmann::json;

struct TolField {
  const char* name;
  double Tolerances::*real;
  int Tolerances::*integer;
};

const TolField kFields[] = {
    {"eps_incid", &Tolerances::eps_incid, nullptr},
    {"eps_rank", &Tolerances::eps_rank, nullptr},
    {"eps_convex", &Tolerances::eps_convex, nullptr},
    {"eps_dual", &Tolerances::eps_dual, nullptr},
    {"eps_affine", &Tolerances::eps_affine, nullptr},
    {"eps_certify", &Tolerances::eps_certify, nullptr},
    {"tol_solver", &Tolerances::tol_solver, nullptr},
    {"tol_fp", &Tolerances::tol_fp, nullptr},
    {"max_iter_fp", nullptr, &Tolerances::max_iter_fp},
    {"n_centers", nullptr, &Tolerances::n_centers},
    {"n_probe", nullptr, &Tolerances::n_probe},
};

std::string num(double x) {
  if (!std::isfinite(x)) throw SceneFormatError("cannot write a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) throw SceneFormatError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Vec2 as_vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SceneFormatError("vertex must be a pair");
  return {as_double(j[0], "vertex"), as_double(j[1], "vertex")};
}

Vec4 as_vec4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) throw SceneFormatError(std::string(what) + " must have 4 entries");
  return {as_double(j[0], what), as_double(j[1], what), as_double(j[2], what), as_double(j[3], what)};
}

PencilFrame parse_frame(const json& f) {
  if (f.is_string() && f.get<std::string>() == "standard") return PencilFrame::standard();
  if (!f.is_object()) throw SceneFormatError("\"frame\" must be \"standard\" or an object");
  if (f.contains("basis")) {
    const json& b = f["basis"];
    if (!b.is_array() || b.size() != 4) throw SceneFormatError("\"basis\" must list 4 columns");
    Mat4 B;
    for (int c = 0; c < 4; ++c) B.col(c) = as_vec4(b[c], "basis column");
    return PencilFrame::from_basis(B);
  }
  if (f.contains("L") && f.contains("P0") && f.contains("P1")) {
    const json& L = f["L"];
    if (!L.is_array() || L.size() != 2) throw SceneFormatError("\"L\" must list 2 points");
    return PencilFrame(ProjLine(as_vec4(L[0], "L point"), as_vec4(L[1], "L point")),
                       HPlane(as_vec4(f["P0"], "P0")), HPlane(as_vec4(f["P1"], "P1")));
  }
  throw SceneFormatError("frame needs \"basis\" or \"L\", \"P0\", \"P1\"");
}

Section parse_sample(const json& s) {
  if (!s.is_object() || !s.contains("theta") || !s.contains("vertices")) {
    throw SceneFormatError("sample needs \"theta\" and \"vertices\"");
  }
  Section out;
  out.theta = as_double(s["theta"], "theta");
  const json& vs = s["vertices"];
  if (!vs.is_array() || vs.empty()) throw SceneFormatError("\"vertices\" must be a nonempty list");
  std::optional<Eigen::Matrix3d> H;
  if (s.contains("chart")) {
    const json& c = s["chart"];
    if (c.is_string()) {
      if (c.get<std::string>() != "section") throw SceneFormatError("unknown chart tag " + c.dump());
    } else if (c.is_object() && c.contains("homography")) {
      const json& h = c["homography"];
      if (!h.is_array() || h.size() != 3) throw SceneFormatError("homography must be 3x3");
      Eigen::Matrix3d M;
      for (int r = 0; r < 3; ++r) {
        if (!h[r].is_array() || h[r].size() != 3) throw SceneFormatError("homography must be 3x3");
        for (int q = 0; q < 3; ++q) M(r, q) = as_double(h[r][q], "homography");
      }
      H = M;
    } else {
      throw SceneFormatError("\"chart\" must be \"section\" or {\"homography\": ...}");
    }
  }
  std::vector<Vec2> pts;
  for (const json& v : vs) {
    const Vec2 xy = as_vec2(v);
    if (!H) {
      pts.push_back(xy);
      continue;
    }
    // Homography to (p0, p1, w): w is the coefficient of n(theta); w = 0 lies on L.
    const Eigen::Vector3d q = *H * Eigen::Vector3d(xy[0], xy[1], 1.0);
    if (std::abs(q[2]) <= 1e-12 * q.norm()) {
      out.touches_L = true;
      continue;
    }
    pts.push_back(Vec2(q[0] / q[2], q[1] / q[2]));
  }
  if (s.contains("touches_L") && s["touches_L"].is_boolean() && s["touches_L"].get<bool>()) {
    out.touches_L = true;
  }
  if (pts.empty()) pts.push_back(Vec2::Zero());
  out.poly = convex_hull(pts);
  return out;
}

}  // namespace

Tolerances Scene::tolerances() const {
  Tolerances t = Tolerances::defaults();
  for (const auto& [k, v] : tolerance_overrides) set_tolerance(t, k, v);
  return t;
}

bool set_tolerance(Tolerances& t, const std::string& name, double value) {
  for (const TolField& f : kFields) {
    if (name != f.name) continue;
    if (f.real) {
      t.*(f.real) = value;
    } else {
      t.*(f.integer) = int(std::lround(value));
    }
    return true;
  }
  return false;
}

std::string write_scene(const Scene& scene) {
  std::ostringstream os;
  os << "{\n  \"format\": \"ccproj-scene 1\",\n  \"frame\": {\"basis\": [";
  const Mat4& B = scene.frame().basis();
  for (int c = 0; c < 4; ++c) {
    os << (c ? ", " : "") << "[" << num(B(0, c)) << ", " << num(B(1, c)) << ", " << num(B(2, c)) << ", "
       << num(B(3, c)) << "]";
  }
  os << "]},\n  \"samples\": [";
  for (std::size_t i = 0; i < scene.fan.size(); ++i) {
    const Section& s = scene.fan[i];
    os << (i ? ",\n" : "\n") << "    {\"theta\": " << num(s.theta) << ", \"chart\": \"section\"";
    if (s.touches_L) os << ", \"touches_L\": true";
    os << ", \"vertices\": [";
    const auto& v = s.poly.vertices();
    for (std::size_t j = 0; j < v.size(); ++j) {
      os << (j ? ", " : "") << "[" << num(v[j][0]) << ", " << num(v[j][1]) << "]";
    }
    os << "]}";
  }
  os << "\n  ],\n  \"tolerances\": {";
  bool first = true;
  for (const auto& [k, v] : scene.tolerance_overrides) {
    os << (first ? "" : ", ") << "\"" << k << "\": " << num(v);
    first = false;
  }
  os << "},\n  \"seed\": " << scene.seed << "\n}\n";
  return os.str();
}

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SceneFormatError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SceneFormatError("scene must be a JSON object");
  if (!j.contains("samples") || !j["samples"].is_array()) throw SceneFormatError("missing \"samples\"");
  const PencilFrame frame = j.contains("frame") ? parse_frame(j["frame"]) : PencilFrame::standard();
  std::vector<Section> samples;
  for (const json& s : j["samples"]) samples.push_back(parse_sample(s));
  std::map<std::string, double> overrides;
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw SceneFormatError("\"tolerances\" must be an object");
    Tolerances probe;
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!set_tolerance(probe, k, as_double(v, "tolerance"))) {
        throw SceneFormatError("unknown tolerance \"" + k + "\"");
      }
      overrides[k] = v.get<double>();
    }
  }
  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw SceneFormatError("\"seed\" must be an integer");
    }
    seed = j["seed"].get<std::uint64_t>();
  }
  try {
    return Scene{SectionFan(frame, std::move(samples)), std::move(overrides), seed};
  } catch (const GeometryError& e) {
    throw SceneFormatError(std::string("bad samples: ") + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneFormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

void save_scene(const std::string& path, const Scene& scene) {
  std::ofstream out(path);
  if (!out) throw SceneFormatError("cannot write " + path);
  out << write_scene(scene);
  if (!out) throw SceneFormatError("write failed for " + path);
}

Tolerances resolve_tolerances(const Scene* scene, std::optional<double> flag) {
  Tolerances t = scene ? scene->tolerances() : Tolerances::defaults();
  if (const char* env = std::getenv("CCPROJ_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw SceneFormatError("CCPROJ_TOL must be a positive number");
    t.eps_certify = v;
  }
  if (flag) t.eps_certify = *flag;
  return t;
}

// --------------------------------------------------------------- generators

Scene gen_quadric(int k, int m, QuadricMode mode) {
  if (k < 3 || m < 8) throw GeometryError(ErrorCode::InvalidInput, "gen_quadric needs k >= 3 and m >= 8");
  const double r = mode == QuadricMode::Inscribed ? 1.0 : 1.0 / std::cos(kPi / m);
  std::vector<Section> s;
  for (int i = 0; i < k; ++i) s.push_back({kPi * i / k, regular_polygon(m, r), false});
  return Scene{SectionFan(PencilFrame::standard(), std::move(s)), {}, 0};
}

Vec3 quadric_chart_point(double theta, const Vec2& p) {
  const double c = std::cos(theta);
  return {p[0] / c, p[1] / c, -std::tan(theta)};
}

namespace {

/// Ellipse sections of {x : x^T Q x <= 0} for Q positive definite on L.
std::optional<SectionFan> quadric_fan(const Mat4& Q, const std::vector<double>& thetas, int m, double phase) {
  const Mat2 QLL = Q.topLeftCorner<2, 2>();
  const Mat2 QLM = Q.topRightCorner<2, 2>();
  const Mat2 QMM = Q.bottomRightCorner<2, 2>();
  Eigen::SelfAdjointEigenSolver<Mat2> es(QLL);
  if (es.eigenvalues().minCoeff() <= 0.05 * es.eigenvalues().maxCoeff()) return std::nullopt;
  const Mat2 Linv = QLL.inverse();
  const Mat2 S = QLM.transpose() * Linv * QLM - QMM;
  Eigen::SelfAdjointEigenSolver<Mat2> ss(S);
  if (ss.eigenvalues().minCoeff() <= 0.05 * ss.eigenvalues().maxCoeff()) return std::nullopt;
  const Mat2 root_inv = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                        es.eigenvectors().transpose();
  std::vector<Section> secs;
  for (double t : thetas) {
    const Vec2 n = unit_normal(t);
    const Vec2 c = -Linv * QLM * n;
    const double rho = std::sqrt(n.dot(S * n));
    std::vector<Vec2> pts;
    for (int j = 0; j < m; ++j) {
      const double a = phase + 2 * kPi * j / m;
      pts.push_back(c + rho * root_inv * unit_dir(a));
    }
    secs.push_back({t, convex_hull(pts), false});
  }
  return SectionFan(PencilFrame::standard(), std::move(secs));
}

}  // namespace

Scene gen_random_fan(std::uint64_t seed, int k, int complexity) {
  if (k < 3) throw GeometryError(ErrorCode::InvalidInput, "gen_random_fan needs k >= 3");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int m = std::min(64, 16 + 4 * std::max(0, complexity));
  for (int attempt = 0; attempt < 200; ++attempt) {
    Mat4 T = Mat4::Identity();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) T(r, c) += 0.3 * nd(rng);
    const Eigen::Vector4d sig(1, 1, -1, -1);
    const Mat4 Q = T.transpose() * sig.asDiagonal() * T;
    const double offset = ud(rng) * kPi / k;
    std::vector<double> thetas;
    for (int i = 0; i < k; ++i) thetas.push_back(wrap_angle(offset + (i + 0.6 * (ud(rng) - 0.5)) * kPi / k));
    auto fan = quadric_fan(Q, thetas, m, 2 * kPi * ud(rng));
    if (!fan) continue;
    SectionFan f = *fan;
    for (int op = 0; op < complexity; ++op) {
      const double start = kPi * ud(rng);
      if (ud(rng) < 0.5) {
        f = surgery_s(f, ArcSegment(start, start + 0.2 + 1.0 * ud(rng)));
      } else {
        f = surgery_p(f, ArcSegment(start, start + 0.3 + (kPi - 0.6) * ud(rng)));
      }
    }
    if (validate(f).valid()) return Scene{std::move(f), {}, seed};
  }
  throw GeometryError(ErrorCode::InvalidInput, "could not generate a valid fan");
}

Scene gen_octagon_fan(std::uint64_t seed, int k, std::array<double, 4>* dirs_out) {
  Scene base = gen_random_fan(seed, k, 1);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::array<double, 4> d;
  const double off = ud(rng) * kPi;
  for (int j = 0; j < 4; ++j) d[j] = wrap_angle(off + (j + 0.5 * (ud(rng) - 0.5)) * kPi / 4);
  if (dirs_out) *dirs_out = d;
  return Scene{octagonalize(base.fan, d), {}, seed};
}

// --------------------------------------------------------------------- mesh

std::string mesh_text(const SectionFan& fan, int ring) {
  std::ostringstream os;
  os << "ccmesh 1\n";
  const std::size_t k = fan.size();
  std::vector<std::pair<double, ConvexPolygon>> rings;
  for (std::size_t i = 0; i < k; ++i) rings.push_back({fan[i].theta, fan[i].poly});
  rings.push_back({fan[0].theta + kPi, fan[0].poly.scaled(-1.0)});
  auto emit = [&](const Vec2& p, double t) { os << "v " << num(p[0]) << " " << num(p[1]) << " " << num(t) << "\n"; };
  for (const auto& [t, poly] : rings) {
    // Matching boundary points across rings: support points in fixed directions.
    for (int j = 0; j < ring; ++j) emit(poly.support_point(unit_dir(2 * kPi * (j + 0.5) / ring)), t);
  }
  emit(rings.front().second.centroid(), rings.front().first);
  emit(rings.back().second.centroid(), rings.back().first);
  const std::size_t R = rings.size();
  auto id = [&](std::size_t r, int j) { return r * ring + std::size_t((j + ring) % ring) + 1; };
  for (std::size_t r = 0; r + 1 < R; ++r) {
    for (int j = 0; j < ring; ++j) {
      os << "f " << id(r, j) << " " << id(r, j + 1) << " " << id(r + 1, j + 1) << "\n";
      os << "f " << id(r, j) << " " << id(r + 1, j + 1) << " " << id(r + 1, j) << "\n";
    }
  }
  const std::size_t c0 = R * ring + 1, c1 = R * ring + 2;
  for (int j = 0; j < ring; ++j) {
    os << "f " << c0 << " " << id(0, j + 1) << " " << id(0, j) << "\n";
    os << "f " << c1 << " " << id(R - 1, j) << " " << id(R - 1, j + 1) << "\n";
  }
  return os.str();
}

}  // namespace ccproj
