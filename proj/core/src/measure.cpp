#include "papersurf/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "papersurf/error.hpp"

namespace papersurf {

namespace {

double max_dist(Point2 a, Point2 b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// Covered length over compressed y intervals.
class CoverTree {
 public:
  explicit CoverTree(std::vector<double> ys) : ys_(std::move(ys)), count_(4 * ys_.size()), len_(4 * ys_.size()) {}

  void add(double lo, double hi, int delta) {
    const auto a = static_cast<std::size_t>(std::lower_bound(ys_.begin(), ys_.end(), lo) - ys_.begin());
    const auto b = static_cast<std::size_t>(std::lower_bound(ys_.begin(), ys_.end(), hi) - ys_.begin());
    if (a < b) update(1, 0, ys_.size() - 1, a, b, delta);
  }
  [[nodiscard]] double covered() const { return len_[1]; }

 private:
  // Node covers elementary intervals [l, r) in index space.
  void update(std::size_t node, std::size_t l, std::size_t r, std::size_t a, std::size_t b, int delta) {
    if (b <= l || r <= a) return;
    if (a <= l && r <= b) {
      count_[node] += delta;
    } else {
      const std::size_t m = (l + r) / 2;
      update(2 * node, l, m, a, b, delta);
      update(2 * node + 1, m, r, a, b, delta);
    }
    if (count_[node] > 0) {
      len_[node] = ys_[r] - ys_[l];
    } else if (r - l == 1) {
      len_[node] = 0.0;
    } else {
      len_[node] = len_[2 * node] + len_[2 * node + 1];
    }
  }

  std::vector<double> ys_;
  std::vector<int> count_;
  std::vector<double> len_;
};

}  // namespace

double rect_union_area(std::span<const Rect> rects) {
  struct Event {
    double x;
    int delta;
    double y0, y1;
  };
  std::vector<Event> events;
  std::vector<double> ys;
  for (const auto& r : rects) {
    if (r.empty()) continue;
    events.push_back({r.xmin, 1, r.ymin, r.ymax});
    events.push_back({r.xmax, -1, r.ymin, r.ymax});
    ys.push_back(r.ymin);
    ys.push_back(r.ymax);
  }
  if (events.empty()) return 0.0;
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (ys.size() < 2) return 0.0;
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });
  CoverTree tree(ys);
  double area = 0.0;
  double last = events.front().x;
  for (const auto& e : events) {
    area += tree.covered() * (e.x - last);
    last = e.x;
    tree.add(e.y0, e.y1, e.delta);
  }
  return area;
}

AreaResult union_area(const PairingScheme& scheme, std::span<const BallPiece> pieces, std::uint64_t seed) {
  AreaResult res;
  res.seed = seed;
  std::map<std::size_t, std::vector<Rect>> boxes;
  for (const auto& p : pieces) boxes[p.center.polygon].push_back(p.box());
  double var = 0.0;
  for (const auto& [poly, list] : boxes) {
    const Polygon& P = scheme.polygon(poly);
    if (P.is_rectilinear()) {
      std::vector<Rect> clipped;
      for (const auto& b : list) {
        for (const auto& slab : P.rectangles()) {
          const Rect c = b.intersect(slab);
          if (!c.empty()) clipped.push_back(c);
        }
      }
      res.value += rect_union_area(clipped);
      continue;
    }
    res.exact = false;
    Rect bb = list.front();
    for (const auto& b : list) {
      bb = {std::min(bb.xmin, b.xmin), std::min(bb.ymin, b.ymin), std::max(bb.xmax, b.xmax), std::max(bb.ymax, b.ymax)};
    }
    bb = bb.intersect(P.bounds());
    if (bb.empty()) continue;
    std::mt19937_64 rng(seed + poly);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double est = 0.0, se = 0.0;
    for (std::size_t g = 64; g <= 2048; g *= 2) {
      std::size_t hits = 0;
      const double dx = (bb.xmax - bb.xmin) / static_cast<double>(g), dy = (bb.ymax - bb.ymin) / static_cast<double>(g);
      for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
          const Point2 q{bb.xmin + (static_cast<double>(i) + u(rng)) * dx, bb.ymin + (static_cast<double>(j) + u(rng)) * dy};
          if (!P.contains(q)) continue;
          if (std::any_of(list.begin(), list.end(), [&](const Rect& b) { return b.contains(q); })) ++hits;
        }
      }
      const double n = static_cast<double>(g * g);
      const double p = static_cast<double>(hits) / n;
      est = p * bb.area();
      se = bb.area() * std::sqrt(p * (1.0 - p) / n);
      if (se <= 0.005 * est) break;
    }
    res.value += est;
    var += se * se;
  }
  res.std_error = std::sqrt(var);
  return res;
}

BallArea ball_area(const PairingScheme& scheme, SurfacePoint center, double r, const BallOptions& opts) {
  const auto dec = decompose_ball(scheme, center, r, opts);
  const auto a = union_area(scheme, dec.pieces);
  return {a.value, dec.tail_area_bound, a.exact, dec.pieces.size()};
}

ScaleConstants scale_constants(const PairingScheme& scheme, Metric m) {
  ScaleConstants c;
  c.diam = scheme.domain().diameter(m);
  c.d_min = scheme.domain().min_nonadjacent_distance(m);
  if (!(c.d_min > 0.0)) throw DomainError("domain has no positive distance between non-adjacent sides");
  c.K = c.diam / c.d_min;
  c.r0 = c.diam / (2.0 * c.K);
  return c;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line needs at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::string center_kind(const PairingScheme& scheme, SurfacePoint c) {
  if (auto bp = scheme.boundary_point(c)) return to_string(scheme.classify(*bp).kind);
  return "interior";
}

std::vector<SurfacePoint> sample_centers(const PairingScheme& scheme, std::size_t n, std::uint64_t seed) {
  std::vector<SurfacePoint> out;
  const auto& classes = scheme.special_classes();
  const auto rank = [](const PointClass& c) {
    if (c.singular()) return 0;
    if (c.cone_angle && std::abs(*c.cone_angle - 2 * std::numbers::pi) > 1e-9) return 1;
    return 2;
  };
  std::vector<std::size_t> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank(classes[a]) < rank(classes[b]); });
  // Special classes take at most half the slots (rounded up) so generic
  // boundary and interior points are always represented.
  const std::size_t special = (n + 1) / 2;
  for (std::size_t i : order) {
    if (out.size() >= special) break;
    out.push_back(scheme.surface_point(classes[i].representative));
  }
  const auto& dom = scheme.domain();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool boundary = true;
  while (out.size() < n) {
    const auto poly = std::min(dom.size() - 1, static_cast<std::size_t>(u(rng) * static_cast<double>(dom.size())));
    const Polygon& P = dom[poly];
    if (boundary) {
      out.push_back(scheme.surface_point({poly, u(rng) * P.perimeter()}));
    } else {
      const Rect b = P.bounds();
      Point2 q;
      do {
        q = {b.xmin + u(rng) * (b.xmax - b.xmin), b.ymin + u(rng) * (b.ymax - b.ymin)};
      } while (!P.contains(q));
      out.push_back({poly, q});
    }
    boundary = !boundary;
  }
  return out;
}

std::vector<double> log_radii(double rmax, std::size_t n) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::ldexp(rmax, -static_cast<int>(i)));
  return out;
}

double extended_regularity_constant(double c0, double total_measure, double r0, double Q) {
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  return std::max(c0, total_measure / std::pow(r0, Q));
}

RegularityReport regularity_scan(const PairingScheme& scheme, std::span<const SurfacePoint> centers,
                                 std::span<const double> radii, double Q) {
  if (centers.empty() || radii.empty()) throw DomainError("regularity scan needs at least one center and radius");
  const auto sc = scale_constants(scheme, Metric::max);
  RegularityReport rep;
  rep.r0 = sc.r0;
  rep.K = sc.K;
  rep.d_min = sc.d_min;
  rep.total_area = scheme.domain().total_area();
  for (double r : radii) {
    if (!(r > 0.0) || r > sc.r0 * (1.0 + 1e-12)) {
      throw DomainError(fmt::format("scan radius {} outside (0, r0 = {}]", r, sc.r0));
    }
  }
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;
  for (const auto& c : centers) {
    const std::string kind = center_kind(scheme, c);
    std::vector<double> ks, ratios;
    double low = std::numeric_limits<double>::infinity();
    for (double r : radii) {
      const double a = ball_area(scheme, c, r).area;
      const double ratio = a / std::pow(r, Q);
      rep.samples.push_back({c, kind, r, a, ratio});
      rep.ratio_min = std::min(rep.ratio_min, ratio);
      rep.ratio_max = std::max(rep.ratio_max, ratio);
      ks.push_back(std::log2(1.0 / r));
      ratios.push_back(ratio);
      low = std::min(low, ratio);
    }
    if (low < 2.0 - 1e-6) {
      rep.violations.push_back(fmt::format("({}, {}) {}: ratio {} below 2", c.p.x, c.p.y, kind, low));
    }
    if (ks.size() >= 4) {
      std::vector<double> uk = ks;
      std::sort(uk.begin(), uk.end());
      if (std::unique(uk.begin(), uk.end()) - uk.begin() >= 4) {
        const auto fit = fit_line(ks, ratios);
        if (fit.slope > 0.1 && fit.r2 >= 0.9) {
          rep.violations.push_back(
              fmt::format("({}, {}) {}: ratio grows with log2(1/r), slope {:.4f}, R^2 {:.4f}", c.p.x, c.p.y, kind,
                          fit.slope, fit.r2));
        }
      }
    }
  }
  rep.c0 = std::max(rep.ratio_max, 1.0 / rep.ratio_min);
  rep.extended_C = extended_regularity_constant(rep.c0, rep.total_area, rep.r0, Q);
  rep.regular = rep.violations.empty();
  return rep;
}

std::string RegularityReport::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "center_x,center_y,kind,r,area,ratio\n";
  for (const auto& s : samples) {
    os << s.center.p.x << ',' << s.center.p.y << ',' << s.kind << ',' << s.r << ',' << s.area << ',' << s.ratio << '\n';
  }
  return os.str();
}

std::string RegularityReport::summary() const {
  return fmt::format("r0={:.6g} K={:.6g} d_min={:.6g} samples={} ratio_min={:.6g} ratio_max={:.6g} c0={:.6g} C={:.6g} verdict={}",
                     r0, K, d_min, samples.size(), ratio_min, ratio_max, c0, extended_C,
                     regular ? std::string("regular-at-scale") : fmt::format("violation({})", violations.size()));
}

std::vector<ExtensionRow> regularity_extension_check(const PairingScheme& scheme, const RegularityReport& report,
                                            std::span<const std::pair<SurfacePoint, double>> probes) {
  std::vector<ExtensionRow> rows;
  for (const auto& [c, r] : probes) {
    const auto big = decompose_ball(scheme, c, r);
    const auto small = decompose_ball(scheme, c, std::min(r, report.r0));
    const double area = union_area(scheme, big.pieces).value;
    std::vector<BallPiece> both = big.pieces;
    both.insert(both.end(), small.pieces.begin(), small.pieces.end());
    const double joined = union_area(scheme, both).value;
    ExtensionRow row{c, r, area, report.extended_C * r * r, false};
    row.ok = area <= row.bound + 1e-9 && joined <= area + 1e-9 * std::max(1.0, area);
    rows.push_back(row);
  }
  return rows;
}

std::string to_string(BoundCase c) {
  switch (c) {
    case BoundCase::accumulation: return "accumulation";
    case BoundCase::conic: return "conic";
    case BoundCase::finite_w: return "finite-w";
  }
  return "accumulation";
}

BoundCase bound_case_from_string(const std::string& s) {
  if (s == "accumulation") return BoundCase::accumulation;
  if (s == "conic") return BoundCase::conic;
  if (s == "finite-w" || s == "finite_w") return BoundCase::finite_w;
  throw DomainError("unknown bound case '" + s + "'");
}

SequenceConstants sequence_constants(const PairingScheme& scheme, std::size_t w) {
  if (w >= scheme.w_specs().size()) throw DomainError("no W spec with index " + std::to_string(w));
  const auto& spec = scheme.w_specs()[w];
  const auto& ex = scheme.expansions()[w];
  SequenceConstants k;
  const std::size_t n = ex.terms;
  for (std::size_t i = 0; i < n; ++i) {
    const double ta = spec.a.tail_sum(i + 1), tb = spec.b.tail_sum(i + 1);
    if (ta > 0.0) k.K1 = std::max(k.K1, tb / ta);
  }
  // Windows i..j with i >= 1 (the sums run from n+1).
  for (std::size_t i = 1; i < n; ++i) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      sa += spec.a.term(j);
      sb += spec.b.term(j);
      if (sa > 0.0) k.K2 = std::max(k.K2, sb / sa);
    }
  }
  k.K3 = k.K2;
  if (spec.a.kind == SequenceSpec::Kind::geometric && spec.b.kind == SequenceSpec::Kind::geometric &&
      spec.a.first > 0.0 && spec.b.first > spec.a.first) {
    k.p = spec.b.first / spec.a.first;
  }
  if (!ex.infinite) k.n_F = ex.terms;
  return k;
}

BoundTable verify_paper_bounds(const PairingScheme& scheme, BoundCase which, std::size_t w,
                               std::span<const std::pair<SurfacePoint, double>> samples) {
  BoundTable t;
  t.which = which;
  t.constants = sequence_constants(scheme, w);
  const bool infinite = scheme.expansions()[w].infinite;
  switch (which) {
    case BoundCase::accumulation:
      if (!infinite) throw DomainError("accumulation bound needs an infinite W spec");
      t.factor = 2.0 * t.constants.K1 + 3.5;
      if (t.constants.p) t.factor = std::min(t.factor, 2.0 * *t.constants.p + 3.5);
      break;
    case BoundCase::conic:
      t.factor = 10.0 + 4.0 * std::max(t.constants.K2, t.constants.K3);
      break;
    case BoundCase::finite_w:
      if (infinite) throw DomainError("finite-W bound needs a finite W spec");
      t.factor = static_cast<double>(t.constants.n_F) + 1.0;
      break;
  }
  for (const auto& [c, r] : samples) {
    BoundRow row{c, r, ball_area(scheme, c, r).area, 2.0 * r * r, t.factor * r * r, false};
    row.ok = row.area >= row.lower - 1e-9 && row.area <= row.upper + 1e-9;
    t.all_ok = t.all_ok && row.ok;
    t.rows.push_back(row);
  }
  return t;
}

LipschitzReport lipschitz_equivalence_check(const PairingScheme& scheme,
                                            std::span<const std::pair<SurfacePoint, double>> balls,
                                            std::size_t points_per_ball, std::uint64_t seed) {
  LipschitzReport rep;
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), v(0.0, 1.0);
  for (const auto& [c, r] : balls) {
    const Polygon& P = scheme.polygon(c.polygon);
    const double reach = std::sqrt(2.0) * r * 1.05;
    for (std::size_t i = 0; i < points_per_ball; ++i) {
      const Point2 q{c.p.x + reach * u(rng), c.p.y + reach * u(rng)};
      const double de = distance(c.p, q, Metric::euclidean), dm = max_dist(c.p, q);
      ++rep.containment_checks;
      if (de < r && !(dm < r)) rep.containment_ok = false;
      if (dm < r && !(de < std::sqrt(2.0) * r)) rep.containment_ok = false;
    }
    const Rect box{c.p.x - r, c.p.y - r, c.p.x + r, c.p.y + r};
    double a_max = 0.0, a_euc = 0.0;
    constexpr std::size_t g = 256;
    const double cell = 2.0 * r / g;
    std::size_t in_max = 0, in_euc = 0;
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < g; ++j) {
        const Point2 q{box.xmin + (static_cast<double>(i) + v(rng)) * cell, box.ymin + (static_cast<double>(j) + v(rng)) * cell};
        if (!P.contains(q)) continue;
        ++in_max;
        if (distance(c.p, q, Metric::euclidean) < r) ++in_euc;
      }
    }
    a_max = static_cast<double>(in_max) * cell * cell;
    a_euc = static_cast<double>(in_euc) * cell * cell;
    if (a_euc > 0.0) {
      rep.ratio_min = std::min(rep.ratio_min, a_max / a_euc);
      rep.ratio_max = std::max(rep.ratio_max, a_max / a_euc);
    }
  }
  return rep;
}

}  // namespace papersurf
