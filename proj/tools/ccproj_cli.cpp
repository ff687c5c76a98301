// Command-line front end: reads scenes (file argument or stdin), writes scenes
// as JSON and reports as key=value lines on stdout.
//
// Exit codes: 0 success, 1 geometric precondition failure, 2 I/O or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccproj/dualize.hpp"
#include "ccproj/eulercalc.hpp"
#include "ccproj/scene.hpp"
#include "ccproj/surgery.hpp"
#include "ccproj/transversal.hpp"

using namespace ccproj;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void kv(const std::string& k, const std::string& v) { std::cout << k << "=" << v << "\n"; }
void kv(const std::string& k, double v) { kv(k, num(v)); }
void kv(const std::string& k, bool v) { kv(k, std::string(v ? "true" : "false")); }
void kv(const std::string& k, std::size_t v) { kv(k, std::to_string(v)); }
void kv(const std::string& k, int v) { kv(k, std::to_string(v)); }

std::vector<double> numbers(const std::string& s, std::size_t want, const char* what) {
  std::string t = s;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(t);
  std::vector<double> out;
  double x;
  while (is >> x) out.push_back(x);
  if (!is.eof() || (want && out.size() != want)) {
    throw SceneFormatError(std::string("--") + what + " expects " + std::to_string(want) + " numbers");
  }
  return out;
}

Scene read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return parse_scene(ss.str());
  }
  return load_scene(path);
}

void write_output(const Scene& s, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << write_scene(s);
  } else {
    save_scene(out, s);
  }
}

Scene with_fan(const Scene& base, SectionFan fan) { return Scene{std::move(fan), base.tolerance_overrides, base.seed}; }

void print_vec4(const std::string& k, const Vec4& v) {
  kv(k, num(v[0]) + " " + num(v[1]) + " " + num(v[2]) + " " + num(v[3]));
}

void print_line(const TransversalLine& t) {
  print_vec4("generator0", t.line.generator(0));
  print_vec4("generator1", t.line.generator(1));
  kv("matrix", num(t.M(0, 0)) + " " + num(t.M(0, 1)) + " " + num(t.M(1, 0)) + " " + num(t.M(1, 1)));
  kv("max_residual", t.value);
  kv("lower_bound", t.lower_bound);
  kv("iterations", t.iterations);
  kv("converged", t.converged);
  kv("chart_phi", t.chart.phi);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L-convex-concave bodies in RP^3: validation, duality, surgeries, transversals"};
  app.require_subcommand(1);
  std::string scene_path, out_path;
  std::optional<double> tol_flag;
  auto add_io = [&](CLI::App* c, bool writes) {
    c->add_option("scene", scene_path, "Scene file (default: stdin)");
    c->add_option("--tol", tol_flag, "Certification tolerance (overrides CCPROJ_TOL and the file)");
    if (writes) c->add_option("-o,--out", out_path, "Output file (default: stdout)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check L-convex-concavity of a scene");
  add_io(validate_cmd, false);

  double theta = 0;
  auto* section_cmd = app.add_subcommand("section", "Print the section at a pencil parameter");
  add_io(section_cmd, false);
  section_cmd->add_option("--theta", theta, "Pencil parameter (radians)")->required();

  auto* dualize_cmd = app.add_subcommand("dualize", "Write the L-dual scene");
  add_io(dualize_cmd, true);
  std::string extra;
  dualize_cmd->add_option("--params", extra, "Extra dual sample parameters, comma separated");

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Report the double-duality residual");
  add_io(roundtrip_cmd, false);
  roundtrip_cmd->add_option("--params", extra, "Extra dual sample parameters, comma separated");

  std::string arc_s;
  auto* ss_cmd = app.add_subcommand("surgery-s", "Hull surgery over a pencil arc");
  add_io(ss_cmd, true);
  ss_cmd->add_option("--arc", arc_s, "start,end (radians, ccw)")->required();
  auto* sp_cmd = app.add_subcommand("surgery-p", "Pointing surgery for an arc of L");
  add_io(sp_cmd, true);
  sp_cmd->add_option("--arc", arc_s, "start,end (radians, ccw)")->required();

  std::string dirs_s;
  auto* oct_cmd = app.add_subcommand("octagonalize", "Circumscribe octagons with four direction classes");
  add_io(oct_cmd, true);
  oct_cmd->add_option("--dirs", dirs_s, "four directions on L (radians)")->required();

  std::string method = "chebyshev", subset_s;
  auto* find_cmd = app.add_subcommand("find-line", "Find a line in the body");
  add_io(find_cmd, false);
  find_cmd->add_option("--method", method, "chebyshev|browder|dual")
      ->check(CLI::IsMember({"chebyshev", "browder", "dual"}));
  find_cmd->add_option("--subset", subset_s, "sample indices, comma separated");

  std::string plane_s;
  auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic of a plane section");
  add_io(chi_cmd, false);
  chi_cmd->add_option("--plane", plane_s, "plane covector \"a b c d\"")->required();

  std::size_t cap = 500;
  auto* helly_cmd = app.add_subcommand("helly", "Five-subset Helly check");
  add_io(helly_cmd, false);
  helly_cmd->add_option("--cap", cap, "Maximum number of subsets");

  std::string line_s;
  auto* cert_cmd = app.add_subcommand("certify", "Certify that a line lies in the body");
  add_io(cert_cmd, false);
  cert_cmd->add_option("--line", line_s, "two points \"a0 a1 a2 a3 b0 b1 b2 b3\"")->required();

  int k = 24, m = 128, complexity = 3;
  std::string mode = "inscribed";
  std::uint64_t seed = 1;
  auto* gq_cmd = app.add_subcommand("gen-quadric", "Polygonized quadric scene");
  gq_cmd->add_option("--k", k, "Number of sections");
  gq_cmd->add_option("--m", m, "Polygon resolution");
  gq_cmd->add_option("--mode", mode, "inscribed|circumscribed")
      ->check(CLI::IsMember({"inscribed", "circumscribed"}));
  gq_cmd->add_option("-o,--out", out_path, "Output file (default: stdout)");

  auto* gr_cmd = app.add_subcommand("gen-random", "Random valid scene");
  gr_cmd->add_option("--seed", seed, "Seed")->required();
  gr_cmd->add_option("--k", k, "Number of sections before surgeries");
  gr_cmd->add_option("--complexity", complexity, "Number of random surgeries");
  gr_cmd->add_option("-o,--out", out_path, "Output file (default: stdout)");

  int ring = 64;
  auto* mesh_cmd = app.add_subcommand("export-mesh", "Write the boundary surface as ccmesh text");
  mesh_cmd->add_option("scene", scene_path, "Scene file (default: stdin)");
  mesh_cmd->add_option("-o,--out", out_path, "Mesh file")->required();
  mesh_cmd->add_option("--ring", ring, "Boundary points per section")->check(CLI::Range(3, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gq_cmd) {
      write_output(gen_quadric(k, m, mode == "inscribed" ? QuadricMode::Inscribed : QuadricMode::Circumscribed),
                   out_path);
      return 0;
    }
    if (*gr_cmd) {
      write_output(gen_random_fan(seed, k, complexity), out_path);
      return 0;
    }

    const Scene scene = read_input(scene_path);
    const Tolerances tol = resolve_tolerances(&scene, tol_flag);
    const SectionFan& fan = scene.fan;

    if (*validate_cmd) {
      const ValidationReport r = validate(fan, tol);
      kv("valid", r.valid());
      kv("convex", r.convex_ok);
      kv("disjoint_from_L", r.disjoint_ok);
      kv("concave", r.concave_ok);
      kv("enough_sections", r.enough_sections);
      kv("sections", fan.size());
      kv("centers", r.n_centers);
      kv("probes", std::size_t(r.probes));
      kv("worst_margin", r.worst_margin);
      for (const std::string& msg : r.messages) kv("message", msg);
      return r.valid() ? 0 : 1;
    }
    if (*section_cmd) {
      const ConvexPolygon p = fan.section_at(theta);
      kv("theta", wrap_angle(theta));
      kv("vertices", p.size());
      for (const Vec2& v : p.vertices()) kv("vertex", num(v[0]) + " " + num(v[1]));
      kv("area", p.area());
      return 0;
    }
    if (*dualize_cmd) {
      write_output(with_fan(scene, l_dual(fan, extra.empty() ? std::vector<double>{} : numbers(extra, 0, "params"), tol)),
                   out_path);
      return 0;
    }
    if (*roundtrip_cmd) {
      const InvolutionResidual r =
          involution_residual(fan, extra.empty() ? std::vector<double>{} : numbers(extra, 0, "params"), tol);
      kv("max_residual", r.max);
      kv("diameter", r.diameter);
      kv("relative", r.max / std::max(1e-300, r.diameter));
      return 0;
    }
    if (*ss_cmd || *sp_cmd) {
      const auto a = numbers(arc_s, 2, "arc");
      const ArcSegment arc(a[0], a[1]);
      write_output(with_fan(scene, *ss_cmd ? surgery_s(fan, arc, tol) : surgery_p(fan, arc, tol)), out_path);
      return 0;
    }
    if (*oct_cmd) {
      const auto d = numbers(dirs_s, 4, "dirs");
      write_output(with_fan(scene, octagonalize(fan, {d[0], d[1], d[2], d[3]}, tol)), out_path);
      return 0;
    }
    if (*find_cmd) {
      std::vector<std::size_t> subset;
      if (!subset_s.empty()) {
        for (double x : numbers(subset_s, 0, "subset")) {
          if (x < 0 || x != std::floor(x) || x >= double(fan.size())) {
            throw GeometryError(ErrorCode::InvalidInput, "--subset index out of range");
          }
          subset.push_back(std::size_t(x));
        }
      }
      kv("method", method);
      if (method == "chebyshev") {
        const TransversalLine t = chebyshev_line(fan, subset, {}, tol);
        print_line(t);
        return 0;
      }
      if (method == "browder") {
        if (subset.empty()) {
          for (int j = 0; j < 4; ++j) subset.push_back(std::size_t(j) * fan.size() / 4);
        }
        if (subset.size() != 4) throw GeometryError(ErrorCode::InvalidInput, "browder needs four sections");
        const FourSectionLine r = four_section_line(fan, {subset[0], subset[1], subset[2], subset[3]}, tol);
        kv("fallback", r.used_fallback);
        kv("browder_iterations", r.browder_iterations);
        print_line(r.line);
        return 0;
      }
      // Dual route: a line of the dual body, transported back.
      const SectionFan dual = l_dual(fan, {}, tol);
      const TransversalLine td = chebyshev_line(dual, subset, {}, tol);
      const ProjLine back = dual_of_found_line(fan.frame(), td.line, tol);
      const Certificate c = certify_line(fan, back, tol);
      print_vec4("generator0", back.generator(0));
      print_vec4("generator1", back.generator(1));
      kv("dual_residual", td.value);
      kv("max_residual", c.max_residual);
      kv("contained", c.contained);
      return 0;
    }
    if (*chi_cmd) {
      const auto p = numbers(plane_s, 4, "plane");
      const ChiReport r = chi_section(fan, HPlane(p[0], p[1], p[2], p[3]), tol);
      kv("chi", r.chi);
      kv("member", r.membership);
      kv("pencil_plane", r.pencil_plane);
      if (r.empty_arc) kv("empty_arc", num(r.empty_arc->start) + " " + num(r.empty_arc->end));
      return 0;
    }
    if (*helly_cmd) {
      const HellyReport r = helly_verify(fan, cap, scene.seed ? scene.seed : 1, 1e-6, tol);
      kv("in_scope", r.in_scope);
      kv("subsets_checked", r.subsets_checked);
      kv("subsets_total", r.subsets_total);
      kv("sampled", r.sampled);
      kv("max_subset_residual", r.max_subset_residual);
      kv("full_residual", r.full_residual);
      kv("consistent", r.consistent);
      return 0;
    }
    if (*cert_cmd) {
      const auto v = numbers(line_s, 8, "line");
      const ProjLine l(Vec4(v[0], v[1], v[2], v[3]), Vec4(v[4], v[5], v[6], v[7]), tol);
      const Certificate c = certify_line(fan, l, tol);
      kv("meets_L", c.meets_L);
      kv("contained", c.contained);
      kv("max_residual", c.max_residual);
      kv("threshold", c.threshold);
      std::string f;
      for (std::size_t i : c.failing) f += (f.empty() ? "" : " ") + std::to_string(i);
      kv("failing", f);
      return 0;
    }
    if (*mesh_cmd) {
      std::ofstream out(out_path);
      if (!out) throw SceneFormatError("cannot write " + out_path);
      out << mesh_text(fan, ring);
      if (!out) throw SceneFormatError("write failed for " + out_path);
      kv("written", out_path);
      return 0;
    }
  } catch (const SceneFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 1;
  }
  return 2;
}
