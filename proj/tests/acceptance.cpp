// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracle.hpp"
#include "papersurf/balls.hpp"
#include "papersurf/error.hpp"
#include "papersurf/horseshoe.hpp"
#include "papersurf/llc.hpp"
#include "papersurf/measure.hpp"
#include "papersurf/quotient.hpp"
#include "papersurf/scheme_io.hpp"

using namespace papersurf;

namespace {

// Pinned tolerances.
constexpr double kWrapTol = 1e-4;
constexpr double kTriangleTol = 1e-9;
constexpr double kOracleRel = 0.01;
constexpr double kBoundAbs = 1e-9;
constexpr double kInvariance = 1e-6;
constexpr double kR2Min = 0.99;
constexpr double kFlatSlope = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<SurfacePoint> random_points(const PairingScheme& s, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rect box = s.domain()[0].bounds();
  for (const auto& P : s.domain().polygons()) {
    const Rect b = P.bounds();
    box = {std::min(box.xmin, b.xmin), std::min(box.ymin, b.ymin), std::max(box.xmax, b.xmax), std::max(box.ymax, b.ymax)};
  }
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
  std::vector<SurfacePoint> pts;
  while (pts.size() < n) {
    const Point2 p{ux(rng), uy(rng)};
    if (auto i = s.domain().locate(p)) pts.push_back({*i, p});
  }
  return pts;
}

bool is_conic(const PairingScheme& s, SurfacePoint c) {
  const auto bp = s.boundary_point(c);
  if (!bp) return false;
  const auto cls = s.classify(*bp);
  return !cls.singular() && cls.cone_angle && std::abs(*cls.cone_angle - 2 * std::numbers::pi) > 1e-9;
}

Outcome c1_quotient() {
  Outcome o;
  const auto torus = builtin_scheme("torus");
  const auto wrap = refine_until(torus, {0, {0.1, 0.5}}, {0, {0.9, 0.5}}, Metric::euclidean, 0.02, 1e-5);
  const bool wrap_ok = std::abs(wrap.value - 0.2) <= kWrapTol;

  const auto ex = builtin_scheme("example-1.3");
  const double fold = quotient_distance(ex, {0, {1.0, 0.2}}, {0, {1.0, 0.8}}, Metric::max, 0.01).value;
  const double glue = quotient_distance(torus, {0, {0.3, 0.0}}, {0, {0.3, 1.0}}, Metric::euclidean, 0.01).value;
  const bool zero_ok = fold == 0.0 && glue == 0.0;

  const auto pts = random_points(ex, 24, 11);
  const auto mat = distance_matrix(ex, pts, Metric::max, default_spacing(ex, Metric::max));
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    worst = std::max(worst, mat[i][k] - mat[i][j] - mat[j][k]);
  }
  const bool tri_ok = worst <= kTriangleTol;
  o.pass = wrap_ok && zero_ok && tri_ok;
  o.detail = fmt::format("wrap={:.6f} paired={:.3g},{:.3g} worst_triangle_excess={:.3g}", wrap.value, fold, glue, worst);
  return o;
}

Outcome c2_oracle() {
  Outcome o;
  double worst_rel = 0.0;
  std::size_t not_shrinking = 0, n = 0;
  for (const char* name : {"example-1.3", "four-rectangle"}) {
    const auto s = builtin_scheme(name);
    const double r0 = scale_constants(s).r0;
    const auto centers = sample_centers(s, 20, 31);
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (const auto& c : centers) {
      const double r = r0 * u(rng);
      const auto d = decompose_ball(s, c, r);
      const double area = union_area(s, d.pieces).value;
      const double coarse = oracle::symmetric_difference(s, d.pieces, oracle::distance_ball(s, c, r, r / 100));
      const double fine = oracle::symmetric_difference(s, d.pieces, oracle::distance_ball(s, c, r, r / 200));
      worst_rel = std::max(worst_rel, coarse / area);
      not_shrinking += fine > coarse + 1e-12;
      ++n;
    }
  }
  o.pass = worst_rel < kOracleRel && not_shrinking == 0;
  o.detail = fmt::format("balls={} worst_symdiff/area={:.4g} not_shrinking={}", n, worst_rel, not_shrinking);
  return o;
}

Outcome c3_bounds() {
  Outcome o;
  const auto s = builtin_scheme("example-1.3");
  const auto centers = sample_centers(s, 50, 41);
  const auto radii = log_radii(scale_constants(s).r0, 12);
  // The accumulation bound is stated for centers in the accumulation class,
  // the conic bound for conic centers; other centers get the larger factor.
  std::vector<std::pair<SurfacePoint, double>> acc_s, con_s, gen_s;
  for (const auto& c : centers) {
    const auto bp = s.boundary_point(c);
    const bool singular = bp && s.classify(*bp).singular();
    for (double r : radii) (singular ? acc_s : is_conic(s, c) ? con_s : gen_s).push_back({c, r});
  }
  const auto acc = verify_paper_bounds(s, BoundCase::accumulation, 0, acc_s);
  const auto con = verify_paper_bounds(s, BoundCase::conic, 0, con_s);
  const double gen_factor = std::max(acc.factor, con.factor);
  bool gen_ok = true;
  double gen_worst = 0.0;
  for (const auto& [c, r] : gen_s) {
    const double a = union_area(s, decompose_ball(s, c, r).pieces).value;
    gen_worst = std::max(gen_worst, a / (r * r));
    gen_ok = gen_ok && a >= 2 * r * r - kBoundAbs && a <= gen_factor * r * r + kBoundAbs;
  }

  const auto f = builtin_scheme("finite-w");
  std::vector<std::pair<SurfacePoint, double>> fs;
  for (const auto& c : sample_centers(f, 50, 42)) {
    for (double r : log_radii(scale_constants(f).r0, 12)) fs.push_back({c, r});
  }
  const auto fin = verify_paper_bounds(f, BoundCase::finite_w, 0, fs);

  const auto worst = [](const BoundTable& t) {
    double w = 0.0;
    for (const auto& row : t.rows) w = std::max(w, row.area / (row.r * row.r));
    return w;
  };
  std::size_t fin_bad = 0;
  for (const auto& row : fin.rows) fin_bad += !row.ok;
  const auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  o.pass = !acc.rows.empty() && acc.all_ok && con.all_ok && gen_ok && fin.all_ok;
  o.detail = fmt::format(
      "accumulation: {} balls max ratio {:.4g} <= {:.4g} {}; conic: {} balls max ratio {:.4g} <= {:.4g} {}; "
      "other: {} balls max ratio {:.4g} <= {:.4g} {}; finite-W: {} balls max ratio {:.4g} <= {:.4g} {} ({} over)",
      acc.rows.size(), worst(acc), acc.factor, mark(acc.all_ok), con.rows.size(), worst(con), con.factor,
      mark(con.all_ok), gen_s.size(), gen_worst, gen_factor, mark(gen_ok), fin.rows.size(), worst(fin), fin.factor,
      mark(fin.all_ok), fin_bad);
  return o;
}

Outcome c4_extension() {
  Outcome o;
  const auto s = builtin_scheme("example-1.3");
  const auto sc = scale_constants(s);
  const auto centers = sample_centers(s, 50, 51);
  const auto rep = regularity_scan(s, centers, log_radii(sc.r0, 12));
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(sc.r0, sc.diam);
  std::vector<std::pair<SurfacePoint, double>> probes;
  for (std::size_t i = 0; i < 20; ++i) probes.push_back({centers[i % centers.size()], u(rng)});
  const auto rows = regularity_extension_check(s, rep, probes);
  std::size_t bad = 0;
  double worst = 0.0;
  for (const auto& row : rows) {
    bad += !row.ok;
    worst = std::max(worst, row.area / (row.r * row.r));
  }
  o.pass = bad == 0 && rows.size() == 20;
  o.detail = fmt::format("r0={:.4g} c0={:.4g} C={:.4g} probes={} worst_ratio={:.4g} failures={}", rep.r0, rep.c0,
                         rep.extended_C, rows.size(), worst, bad);
  return o;
}

Outcome c5_llc() {
  Outcome o;
  const auto s = builtin_scheme("example-1.3");
  const auto sc = scale_constants(s);
  const double lambda = 4.0 * sc.K;
  std::size_t samples = 0, ok1 = 0, ok2 = 0, comp = 0;
  std::uint64_t seed = 61;
  for (double r : {0.15, 0.25, 0.4}) {
    const auto grid = build_grid(s, r / 100);
    std::vector<std::pair<SurfacePoint, double>> batch;
    for (const auto& c : sample_centers(s, 10, seed++)) batch.push_back({c, r});
    const auto rep = llc_check(s, grid, lambda, batch);
    for (const auto& smp : rep.samples) {
      ++samples;
      ok1 += smp.llc1_ok;
      ok2 += smp.llc2_ok;
      if (smp.r <= sc.r0) comp += complement_connected(s, grid, smp.center, smp.r);
    }
  }
  o.pass = samples == 30 && ok1 == samples && ok2 == samples && comp == samples;
  o.detail = fmt::format("lambda={:.3g} samples={} LLC1={} LLC2={} complement_connected={}", lambda, samples, ok1, ok2, comp);
  return o;
}

Outcome c6_horseshoe() {
  Outcome o;
  const std::vector<int> ks{3, 4, 5, 6, 7, 8, 9, 10};
  const auto t = horseshoe_area_experiment(24, ks);
  bool increasing = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) increasing = increasing && t.rows[i].ratio > t.rows[i - 1].ratio;
  const auto flat = area_experiment(builtin_scheme("example-1.3"), ks);
  o.pass = increasing && t.fit.slope > 0.0 && t.fit.r2 >= kR2Min && std::abs(flat.fit.slope) < kFlatSlope;
  o.detail = fmt::format("ratios {:.4g}..{:.4g} increasing={} slope={:.4g} R2={:.4f}; example slope={:.3g}",
                         t.rows.front().ratio, t.rows.back().ratio, increasing, t.fit.slope, t.fit.r2, flat.fit.slope);
  return o;
}

Outcome c7_validity() {
  Outcome o;
  const auto torus = builtin_scheme("torus");
  const auto ex = builtin_scheme("example-1.3");
  const auto hs = builtin_scheme("tight-horseshoe");
  const auto fr = builtin_scheme("four-rectangle");
  const bool t_ok = torus.check_full().ok && !torus.check_unlinked().plain;
  const bool e_ok = ex.check_full().ok && ex.check_unlinked().plain;
  const bool h_ok = hs.check_full().ok;
  const bool f_ok = fr.check_full().ok && fr.check_unlinked(true).plain;
  o.pass = t_ok && e_ok && h_ok && f_ok;
  o.detail = fmt::format("torus full+linked={} example full+plain={} horseshoe full={} four-rectangle full+plain(merge)={}",
                         t_ok, e_ok, h_ok, f_ok);
  return o;
}

Outcome c8_invariance() {
  Outcome o;
  double worst_d = 0.0, worst_a = 0.0;
  std::size_t probes = 0;
  const double h = 0.0125;
  for (const char* name : {"torus", "example-1.3", "four-rectangle"}) {
    const auto s = builtin_scheme(name);
    // Split points on the h lattice, so both graphs share their nodes.
    const auto split = s.split_pairing(0, 0.25).split_pairing(1, 0.5);
    const Metric m = Metric::max;
    const auto pts = random_points(s, 20, 71);
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> ur(0.02, 0.3);
    const ChainGraph g(s, m, h), gs(split, m, h);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 7) % pts.size()];
      worst_d = std::max(worst_d, std::abs(g.distance(a, b).value - gs.distance(a, b).value));
      const double r = ur(rng);
      const double A = union_area(s, decompose_ball(s, a, r).pieces).value;
      const double B = union_area(split, decompose_ball(split, a, r).pieces).value;
      worst_a = std::max(worst_a, std::abs(A - B));
      ++probes;
    }
  }
  o.pass = worst_d <= kInvariance && worst_a <= kInvariance;
  o.detail = fmt::format("probes={} worst_distance_change={:.3g} worst_area_change={:.3g}", probes, worst_d, worst_a);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "quotient-metric-exactness", 10, c1_quotient},
      {2, "ball-oracle-equivalence", 120, c2_oracle},
      {3, "area-bounds", 300, c3_bounds},
      {4, "regularity-constant-extension", 60, c4_extension},
      {5, "llc", 300, c5_llc},
      {6, "tight-horseshoe-non-regularity", 120, c6_horseshoe},
      {7, "scheme-validity", 1, c7_validity},
      {8, "split-invariance", 120, c8_invariance},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %d %s: %s [%.2fs, budget %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
