#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "papersurf/balls.hpp"
#include "papersurf/error.hpp"
#include "papersurf/horseshoe.hpp"
#include "papersurf/llc.hpp"
#include "papersurf/measure.hpp"
#include "papersurf/quotient.hpp"
#include "papersurf/scheme_io.hpp"

using namespace papersurf;

namespace {

constexpr int kParseExit = 1;
constexpr int kDomainExit = 2;
constexpr int kNonConvergenceExit = 3;

// "P:x,y" with P a polygon id or index; a bare "x,y" means polygon 0.
SurfacePoint parse_point(const PairingScheme& scheme, const std::string& text) {
  std::string poly = "0", rest = text;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    poly = text.substr(0, colon);
    rest = text.substr(colon + 1);
  }
  const auto comma = rest.find(',');
  if (comma == std::string::npos) throw ParseError("point must look like P:x,y, got '" + text + "'");
  SurfacePoint p;
  try {
    p.p = {std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad coordinates in '" + text + "'");
  }
  if (auto idx = scheme.domain().find(poly)) {
    p.polygon = *idx;
  } else {
    try {
      p.polygon = std::stoul(poly);
    } catch (const std::exception&) {
      throw DomainError("unknown polygon '" + poly + "'");
    }
  }
  if (p.polygon >= scheme.domain().size()) throw DomainError("unknown polygon '" + poly + "'");
  return p;
}

std::string point_str(const PairingScheme& scheme, SurfacePoint p) {
  return fmt::format("{}:{:.6g},{:.6g}", scheme.polygon(p.polygon).id(), p.p.x, p.p.y);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

SchemeFile load(const std::string& spec) {
  auto f = load_scheme_or_builtin(spec);
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << "\n";
  return f;
}

int cmd_validate(const std::string& spec, bool merge) {
  const auto f = load(spec);
  const auto& s = f.scheme;
  const auto full = s.check_full();
  if (!full.ok) {
    std::cout << fmt::format("full: no (covered {:.1f} of {:.1f})\n", full.total_pairing_len, 0.5 * full.boundary_len);
    return kDomainExit;
  }
  const auto link = s.check_unlinked(merge);
  std::size_t singular = 0;
  for (const auto& c : s.special_classes()) singular += c.singular();
  std::string plain = "yes";
  if (!link.plain) {
    plain = "no (" + link.reason;
    if (link.witness) {
      plain += " witness";
      for (const auto& b : *link.witness) plain += " " + point_str(s, s.surface_point(b));
    }
    plain += ")";
  }
  std::cout << fmt::format("full: yes, plain: {}, singular classes: {}\n", plain, singular);
  return 0;
}

int cmd_distance(const std::string& spec, const std::string& from, const std::string& to, double h, double tol,
                 const std::string& path_csv) {
  const auto f = load(spec);
  const auto& s = f.scheme;
  const auto x = parse_point(s, from), y = parse_point(s, to);
  const double h0 = h > 0.0 ? h : default_spacing(s, f.metric);
  const auto d = tol > 0.0 ? refine_until(s, x, y, f.metric, h0, tol) : quotient_distance(s, x, y, f.metric, h0);
  std::cout << fmt::format("distance: {:.10g} (h = {:.4g}, metric {})\n", d.value, d.h, to_string(f.metric));
  if (!path_csv.empty()) {
    std::string out = "polygon,x,y,jump\n";
    for (const auto& st : d.path) {
      out += fmt::format("{},{:.17g},{:.17g},{}\n", s.polygon(st.point.polygon).id(), st.point.p.x, st.point.p.y,
                         st.jump ? 1 : 0);
    }
    write_out(path_csv, out);
  }
  return d.converged ? 0 : kNonConvergenceExit;
}

int cmd_ball(const std::string& spec, const std::string& center, double r, const std::string& csv,
             const std::string& svg) {
  const auto f = load(spec);
  const auto& s = f.scheme;
  const auto dec = decompose_ball(s, parse_point(s, center), r);
  const auto area = union_area(s, dec.pieces);
  std::cerr << fmt::format("pieces: {}, area: {:.10g}{}, ratio: {:.6g}, tail bound: {:.3g}\n", dec.pieces.size(),
                           area.value, area.exact ? "" : " (sampled)", area.value / (r * r), dec.tail_area_bound);
  write_out(csv, pieces_csv(s, dec));
  if (!svg.empty()) write_out(svg, pieces_svg(s, dec));
  return 0;
}

int cmd_regularity(const std::string& spec, std::size_t n_centers, std::size_t n_radii, std::uint64_t seed,
                   const std::string& csv) {
  const auto f = load(spec);
  const auto& s = f.scheme;
  const auto centers = sample_centers(s, n_centers, f.seed.value_or(seed));
  const auto radii = log_radii(scale_constants(s).r0, n_radii);
  const auto rep = regularity_scan(s, centers, radii);
  std::cout << fmt::format("ratio in [{:.2f}, {:.2f}]\n", rep.ratio_min, rep.ratio_max);
  std::map<std::string, std::pair<double, double>> by_kind;
  for (const auto& smp : rep.samples) {
    auto [it, fresh] = by_kind.try_emplace(smp.kind, smp.ratio, smp.ratio);
    if (!fresh) {
      it->second.first = std::min(it->second.first, smp.ratio);
      it->second.second = std::max(it->second.second, smp.ratio);
    }
  }
  for (const auto& [kind, range] : by_kind) {
    std::cout << fmt::format("  {}: [{:.2f}, {:.2f}]\n", kind, range.first, range.second);
  }
  std::cout << rep.summary() << "\n";
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  if (!csv.empty()) write_out(csv, rep.csv());
  return 0;
}

int cmd_llc(const std::string& spec, double lambda, double r, double h, std::size_t n, std::uint64_t seed,
            const std::string& csv) {
  const auto f = load(spec);
  const auto& s = f.scheme;
  const auto sc = scale_constants(s);
  if (!(r > 0.0)) r = 0.4 * sc.r0;
  if (!(h > 0.0)) h = r / 100.0;
  if (!(lambda > 0.0)) lambda = 4.0 * sc.K;
  const auto grid = build_grid(s, h);
  std::vector<std::pair<SurfacePoint, double>> samples;
  for (const auto& c : sample_centers(s, n, f.seed.value_or(seed))) samples.push_back({c, r});
  LLCOptions opts;
  opts.seed = f.seed.value_or(seed);
  const auto rep = llc_check(s, grid, lambda, samples, opts);
  std::size_t ok1 = 0, ok2 = 0, comp = 0;
  for (const auto& smp : rep.samples) {
    ok1 += smp.llc1_ok;
    ok2 += smp.llc2_ok;
    comp += complement_connected(s, grid, smp.center, smp.r);
  }
  std::cout << fmt::format("lambda = {:.4g}, h = {:.4g}: LLC1 {}/{}, LLC2 {}/{}, complement connected {}/{}\n", lambda,
                           h, ok1, rep.samples.size(), ok2, rep.samples.size(), comp, rep.samples.size());
  if (!csv.empty()) write_out(csv, rep.csv());
  return 0;
}

int cmd_horseshoe(std::size_t depth, int kmin, int kmax, const std::string& contrast, const std::string& csv) {
  if (kmin < 1 || kmax < kmin) throw DomainError("need 1 <= kmin <= kmax");
  std::vector<int> ks(static_cast<std::size_t>(kmax - kmin + 1));
  std::iota(ks.begin(), ks.end(), kmin);
  const auto t = horseshoe_area_experiment(depth, ks);
  write_out(csv, t.csv());
  std::cerr << "horseshoe " << t.summary();
  if (!contrast.empty()) {
    const auto f = load(contrast);
    std::cerr << "contrast  " << area_experiment(f.scheme, ks).summary();
  }
  return 0;
}

int cmd_builtin(const std::string& name) {
  if (name.empty()) {
    for (const auto& n : builtin_names()) std::cout << n << "\n";
    return 0;
  }
  std::cout << builtin_source(name) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paper surfaces: quotient distances, ball decompositions, regularity and LLC checks"};
  // --h is the grid spacing, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string scheme, out_csv, out_svg;
  std::uint64_t seed = 1;

  auto* validate = app.add_subcommand("validate", "Check fullness and plainness of a scheme");
  bool merge = false;
  validate->add_option("scheme", scheme, "Scheme file or builtin name")->required();
  validate->add_flag("--merge", merge, "Glue a multipolygon along its inter-polygon pairings first");

  auto* distance = app.add_subcommand("distance", "Quotient distance between two points");
  std::string from, to, path_csv;
  double h = 0.0, tol = 0.0;
  distance->add_option("scheme", scheme, "Scheme file or builtin name")->required();
  distance->add_option("--from", from, "Start point P:x,y")->required();
  distance->add_option("--to", to, "End point P:x,y")->required();
  distance->add_option("--h", h, "Lattice spacing (default: from the scheme)");
  distance->add_option("--tol", tol, "Refine until successive values agree to tol");
  distance->add_option("--path", path_csv, "Write the chain as CSV");

  auto* ball = app.add_subcommand("ball", "Decompose a ball into pieces");
  std::string center;
  double radius = 0.0;
  ball->add_option("scheme", scheme, "Scheme file or builtin name")->required();
  ball->add_option("--center", center, "Center P:x,y")->required();
  ball->add_option("--r", radius, "Radius")->required();
  ball->add_option("--csv", out_csv, "Pieces CSV (default stdout)");
  ball->add_option("--svg", out_svg, "SVG rendering");

  auto* regularity = app.add_subcommand("regularity", "Ahlfors 2-regularity scan");
  std::size_t n_centers = 50, n_radii = 12;
  regularity->add_option("scheme", scheme, "Scheme file or builtin name")->required();
  regularity->add_option("--centers", n_centers, "Number of centers")->capture_default_str();
  regularity->add_option("--radii", n_radii, "Number of radii r0 * 2^-i")->capture_default_str();
  regularity->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  regularity->add_option("--csv", out_csv, "Sample table");

  auto* llc = app.add_subcommand("llc", "Linear local connectivity check");
  double lambda = 0.0;
  std::size_t n_samples = 30;
  llc->add_option("scheme", scheme, "Scheme file or builtin name")->required();
  llc->add_option("--lambda", lambda, "Constant to test (default 4K)");
  llc->add_option("--r", radius, "Ball radius (default 0.4 r0)");
  llc->add_option("--h", h, "Grid spacing (default r/100)");
  llc->add_option("--samples", n_samples, "Number of centers")->capture_default_str();
  llc->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  llc->add_option("--csv", out_csv, "Per-sample table");

  auto* horseshoe = app.add_subcommand("horseshoe", "Area growth at the tight horseshoe's singular class");
  std::size_t depth = 24;
  int kmin = 3, kmax = 10;
  std::string contrast;
  horseshoe->add_option("--depth", depth, "Truncation depth")->capture_default_str();
  horseshoe->add_option("--kmin", kmin, "Smallest k in r = 2^-k")->capture_default_str();
  horseshoe->add_option("--kmax", kmax, "Largest k")->capture_default_str();
  horseshoe->add_option("--contrast", contrast, "Run the same experiment on another scheme");
  horseshoe->add_option("--csv", out_csv, "Table (default stdout)");

  auto* builtin = app.add_subcommand("builtin", "List builtin schemes or print one as JSON");
  std::string name;
  builtin->add_option("name", name, "Builtin name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseExit;
  }

  try {
    if (*validate) return cmd_validate(scheme, merge);
    if (*distance) return cmd_distance(scheme, from, to, h, tol, path_csv);
    if (*ball) return cmd_ball(scheme, center, radius, out_csv, out_svg);
    if (*regularity) return cmd_regularity(scheme, n_centers, n_radii, seed, out_csv);
    if (*llc) return cmd_llc(scheme, lambda, radius, h, n_samples, seed, out_csv);
    if (*horseshoe) return cmd_horseshoe(depth, kmin, kmax, contrast, out_csv);
    if (*builtin) return cmd_builtin(name);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseExit;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  } catch (const NonConvergence& e) {
    std::cerr << "did not converge: " << e.what() << "\n";
    return kNonConvergenceExit;
  }
  return 0;
}
