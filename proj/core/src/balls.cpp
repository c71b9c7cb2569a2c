#include "papersurf/balls.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <fmt/format.h>

#include "papersurf/error.hpp"

namespace papersurf {

namespace {

constexpr double kDominance = 1e-12;

// Straight piece of one side of a pairing.
struct SubSegment {
  std::size_t pairing = 0;
  bool a_side = true;
  std::size_t polygon = 0;
  double offset = 0.0;  // offset of `start` within the pairing half
  double length = 0.0;
  Point2 start;
  Point2 dir;  // unit
  Rect bbox;
};

std::vector<std::vector<SubSegment>> sub_segments(const PairingScheme& scheme) {
  std::vector<std::vector<SubSegment>> out(scheme.domain().size());
  const auto& all = scheme.expanded();
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& e = all[k];
    for (bool a_side : {true, false}) {
      const std::size_t poly = a_side ? e.a_polygon : e.b_polygon;
      const Polygon& P = scheme.polygon(poly);
      const double s0 = a_side ? e.a_start : e.b_start;
      double done = 0.0;
      while (done < e.len - 1e-15) {
        const double ns = P.normalize(s0 + done);
        // Probe slightly ahead so a start exactly on a vertex picks the next edge.
        const std::size_t edge = P.edge_at(P.normalize(s0 + done + 1e-12));
        double edge_end = edge + 1 < P.size() ? P.vertex_coordinate(edge + 1) : P.perimeter();
        if (edge_end < ns - 1e-9) edge_end += P.perimeter();
        const double step = std::min(e.len - done, edge_end - ns);
        if (step <= 1e-15) break;
        SubSegment seg;
        seg.pairing = k;
        seg.a_side = a_side;
        seg.polygon = poly;
        seg.offset = done;
        seg.length = step;
        seg.start = P.point_at(ns);
        seg.dir = P.edge_direction(edge);
        const Point2 end = seg.start + step * seg.dir;
        seg.bbox = {std::min(seg.start.x, end.x), std::min(seg.start.y, end.y), std::max(seg.start.x, end.x),
                    std::max(seg.start.y, end.y)};
        out[poly].push_back(seg);
        done += step;
      }
    }
  }
  return out;
}

double max_dist(Point2 a, Point2 b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// Minimum of t -> |c - (start + t dir)|_inf over [0, L] and the interval
// where it is attained. The function is convex and piecewise linear, so the
// interval ends are among the breakpoints.
struct Nearest {
  double d = 0.0, t_lo = 0.0, t_hi = 0.0;
};

Nearest nearest(const SubSegment& s, Point2 c) {
  const double dx = s.start.x - c.x, dy = s.start.y - c.y;
  std::vector<double> cand{0.0, s.length};
  const auto root = [&](double c0, double c1) {
    if (std::abs(c1) > 1e-15) {
      const double t = -c0 / c1;
      if (t > 0.0 && t < s.length) cand.push_back(t);
    }
  };
  root(dx, s.dir.x);
  root(dy, s.dir.y);
  root(dx - dy, s.dir.x - s.dir.y);
  root(dx + dy, s.dir.x + s.dir.y);
  const auto f = [&](double t) { return max_dist(s.start + t * s.dir, c); };
  Nearest n;
  n.d = std::numeric_limits<double>::infinity();
  for (double t : cand) n.d = std::min(n.d, f(t));
  n.t_lo = s.length;
  n.t_hi = 0.0;
  for (double t : cand) {
    if (f(t) <= n.d + 1e-13) {
      n.t_lo = std::min(n.t_lo, t);
      n.t_hi = std::max(n.t_hi, t);
    }
  }
  return n;
}

}  // namespace

std::string BallPiece::tag() const {
  switch (provenance) {
    case Provenance::main: return "main";
    case Provenance::conic_spawn: return fmt::format("conic-spawn({})", index);
    case Provenance::accumulation_spawn: return fmt::format("accumulation-spawn({})", index);
    case Provenance::vertex_spawn: return fmt::format("vertex-spawn({})", index);
  }
  return "main";
}

BallDecomposition decompose_ball(const PairingScheme& scheme, SurfacePoint center, double r, const BallOptions& opts) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ball radius must be positive");
  const auto& dom = scheme.domain();
  if (center.polygon >= dom.size() || !dom[center.polygon].contains(center.p, 1e-9)) {
    throw DomainError("ball center is not in the domain");
  }
  BallDecomposition dec;
  dec.center = center;
  dec.r = r;
  if (auto bp = scheme.boundary_point(center)) dec.center_class = scheme.classify(*bp);

  const auto segs = sub_segments(scheme);
  const double eps = r * opts.eps_rel;
  std::vector<std::vector<BoundaryPoint>> acc_class(scheme.expansions().size());
  for (std::size_t w = 0; w < scheme.expansions().size(); ++w) {
    const auto& ex = scheme.expansions()[w];
    if (ex.infinite) acc_class[w] = scheme.identify({scheme.w_specs()[w].polygon, ex.accumulation});
  }

  std::vector<double> tail_reach(scheme.expansions().size(), -1.0), tail_cover(scheme.expansions().size(), 0.0);

  std::vector<BallPiece> pieces;
  std::vector<char> alive;
  std::vector<std::vector<std::size_t>> by_poly(dom.size());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item> queue;

  const auto spawn = [&](BallPiece piece) {
    if (piece.radius <= eps) {
      if (piece.radius > 0.0) dec.tail_area_bound += 4.0 * piece.radius * piece.radius;
      return;
    }
    auto& list = by_poly[piece.center.polygon];
    for (std::size_t id : list) {
      if (!alive[id]) continue;
      if (max_dist(pieces[id].center.p, piece.center.p) + piece.radius <= pieces[id].radius + kDominance) return;
    }
    for (std::size_t id : list) {
      if (alive[id] && max_dist(pieces[id].center.p, piece.center.p) + pieces[id].radius <= piece.radius + kDominance) {
        alive[id] = 0;
      }
    }
    if (pieces.size() >= opts.max_pieces) {
      throw NonConvergence("ball decomposition exceeded " + std::to_string(opts.max_pieces) + " pieces");
    }
    list.push_back(pieces.size());
    alive.push_back(1);
    queue.push({piece.radius, pieces.size()});
    pieces.push_back(piece);
  };

  spawn({center, r, Provenance::main, 0});

  while (!queue.empty()) {
    const std::size_t id = queue.top().second;
    queue.pop();
    if (!alive[id]) continue;
    const BallPiece cur = pieces[id];
    const Point2 c = cur.center.p;
    const double rho = cur.radius;
    const Rect box = cur.box();

    for (const auto& seg : segs[cur.center.polygon]) {
      if (seg.bbox.xmin > box.xmax || seg.bbox.xmax < box.xmin || seg.bbox.ymin > box.ymax || seg.bbox.ymax < box.ymin) {
        continue;
      }
      const Nearest n = nearest(seg, c);
      if (n.d >= rho) continue;
      const double R = rho - n.d;
      if (R <= eps) {
        dec.tail_area_bound += 4.0 * R * R;
        continue;
      }
      std::vector<std::pair<double, double>> samples;  // (t, radius)
      const auto count = static_cast<std::size_t>(std::ceil((n.t_hi - n.t_lo) / (2.0 * R)));
      for (std::size_t i = 0; i <= count; ++i) {
        const double t = count == 0 ? n.t_lo : n.t_lo + (n.t_hi - n.t_lo) * static_cast<double>(i) / static_cast<double>(count);
        samples.push_back({t, R});
      }
      const bool axis = std::abs(seg.dir.x) < 1e-12 || std::abs(seg.dir.y) < 1e-12;
      if (!axis) {
        // Oblique sides: boxes past the flat part are not nested, so sample
        // the reachable rest of the segment as well.
        const double step = R / 4.0;
        for (double t = n.t_lo - step; t > 0.0; t -= step) {
          const double rr = rho - max_dist(seg.start + t * seg.dir, c);
          if (rr <= 0.0) break;
          samples.push_back({t, rr});
        }
        for (double t = n.t_hi + step; t < seg.length; t += step) {
          const double rr = rho - max_dist(seg.start + t * seg.dir, c);
          if (rr <= 0.0) break;
          samples.push_back({t, rr});
        }
      }
      const auto& e = scheme.expanded()[seg.pairing];
      for (const auto& [t, rad] : samples) {
        const double tau = seg.offset + t;
        const BoundaryPoint img = seg.a_side ? BoundaryPoint{e.b_polygon, e.b_start + e.len - tau}
                                             : BoundaryPoint{e.a_polygon, e.a_start + e.len - tau};
        const BoundaryPoint ni = scheme.normalize(img);
        BallPiece p{scheme.surface_point(ni), rad, Provenance::conic_spawn, seg.pairing};
        if (auto v = scheme.polygon(ni.polygon).vertex_at(ni.s)) {
          p.provenance = Provenance::vertex_spawn;
          p.index = *v;
        }
        spawn(p);
      }
    }

    for (std::size_t w = 0; w < scheme.expansions().size(); ++w) {
      const auto& ex = scheme.expansions()[w];
      if (!ex.infinite || scheme.w_specs()[w].polygon != cur.center.polygon) continue;
      const Polygon& P = scheme.polygon(cur.center.polygon);
      const double d = max_dist(c, P.point_at(ex.accumulation));
      const double R = std::max(0.0, rho - d);
      if (ex.tail_length > 0.0) {
        const double near = std::max(0.0, d - ex.tail_length);
        if (near < rho) tail_reach[w] = std::max(tail_reach[w], rho - near);
        tail_cover[w] = std::max(tail_cover[w], R);
      }
      if (R <= 0.0) continue;
      for (const auto& m : acc_class[w]) spawn({scheme.surface_point(m), R, Provenance::accumulation_spawn, w});
    }
  }

  // Whatever is reached through an unexpanded tail lies within reach + t of
  // the accumulation point, whose own spawn already covers radius cover.
  // Tails sharing an accumulation point share one ring.
  std::vector<char> done(tail_reach.size(), 0);
  for (std::size_t w = 0; w < tail_reach.size(); ++w) {
    if (done[w] || tail_reach[w] < 0.0) continue;
    const BoundaryPoint acc{scheme.w_specs()[w].polygon, scheme.expansions()[w].accumulation};
    double outer = 0.0, cover = 0.0;
    for (std::size_t v = w; v < tail_reach.size(); ++v) {
      if (tail_reach[v] < 0.0 || !scheme.same_point(acc, {scheme.w_specs()[v].polygon, scheme.expansions()[v].accumulation})) {
        continue;
      }
      done[v] = 1;
      outer = std::max(outer, tail_reach[v] + scheme.expansions()[v].tail_length);
      cover = std::max(cover, tail_cover[v]);
    }
    dec.tail_area_bound += 4.0 * (outer * outer - cover * cover);
  }

  for (std::size_t id = 0; id < pieces.size(); ++id) {
    if (alive[id]) dec.pieces.push_back(pieces[id]);
  }
  return dec;
}

bool ball_contains(const PairingScheme& scheme, const BallDecomposition& dec, SurfacePoint q) {
  std::vector<SurfacePoint> probes{q};
  if (auto bp = scheme.boundary_point(q)) {
    for (const auto& m : scheme.identify(*bp)) probes.push_back(scheme.surface_point(m));
  }
  for (const auto& p : probes) {
    if (p.polygon >= scheme.domain().size() || !scheme.polygon(p.polygon).contains(p.p, 1e-9)) continue;
    for (const auto& piece : dec.pieces) {
      if (piece.center.polygon == p.polygon && max_dist(piece.center.p, p.p) < piece.radius) return true;
    }
  }
  return false;
}

std::vector<SpawnStep> spawn_schedule(const PairingScheme& scheme, std::size_t w, double r,
                                      std::optional<std::size_t> conic) {
  if (w >= scheme.w_specs().size()) throw DomainError("spawn_schedule: no W spec with index " + std::to_string(w));
  if (!(r > 0.0)) throw DomainError("spawn_schedule: radius must be positive");
  const auto& spec = scheme.w_specs()[w];
  const std::size_t n = spec.a.infinite() ? spec.depth : spec.a.count();
  std::vector<SpawnStep> out;
  if (!conic) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = r - spec.a.tail_sum(i + 1);
      if (ri > 0.0) out.push_back({i, ri});
    }
    return out;
  }
  if (*conic == 0 || *conic > n) throw DomainError("spawn_schedule: conic index out of range");
  out.push_back({*conic, r});
  double used = 0.0;
  for (std::size_t j = *conic; j-- > 0;) {
    used += spec.a.term(j);
    const double rj = r - used;
    if (rj <= 0.0) break;
    out.push_back({j, rj});
  }
  return out;
}

std::string pieces_csv(const PairingScheme& scheme, const BallDecomposition& dec) {
  std::ostringstream os;
  os.precision(17);
  os << "cx,cy,r,polygon,provenance\n";
  for (const auto& p : dec.pieces) {
    os << p.center.p.x << ',' << p.center.p.y << ',' << p.radius << ',' << scheme.polygon(p.center.polygon).id() << ','
       << p.tag() << '\n';
  }
  return os.str();
}

std::string pieces_svg(const PairingScheme& scheme, const BallDecomposition& dec) {
  const auto& dom = scheme.domain();
  Rect b = dom[0].bounds();
  for (std::size_t i = 1; i < dom.size(); ++i) {
    const Rect o = dom[i].bounds();
    b = {std::min(b.xmin, o.xmin), std::min(b.ymin, o.ymin), std::max(b.xmax, o.xmax), std::max(b.ymax, o.ymax)};
  }
  const double pad = 0.05 * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  const double w = b.xmax - b.xmin + 2 * pad, h = b.ymax - b.ymin + 2 * pad;
  std::ostringstream os;
  os.precision(12);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\"800\" height=\""
     << 800.0 * h / w << "\">\n";
  // Flip y so the picture matches the usual orientation.
  os << "<g transform=\"translate(" << pad - b.xmin << ',' << h - pad + b.ymin << ") scale(1,-1)\">\n<defs>\n";
  const auto points = [&](const Polygon& P) {
    std::ostringstream ps;
    ps.precision(12);
    for (const auto& v : P.vertices()) ps << v.x << ',' << v.y << ' ';
    return ps.str();
  };
  for (std::size_t i = 0; i < dom.size(); ++i) {
    os << "<clipPath id=\"clip" << i << "\"><polygon points=\"" << points(dom[i]) << "\"/></clipPath>\n";
  }
  os << "</defs>\n";
  const double stroke = 0.002 * std::max(w, h);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    os << "<polygon points=\"" << points(dom[i]) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke
       << "\"/>\n";
  }
  for (const auto& p : dec.pieces) {
    const Rect r = p.box();
    os << "<rect clip-path=\"url(#clip" << p.center.polygon << ")\" x=\"" << r.xmin << "\" y=\"" << r.ymin
       << "\" width=\"" << r.xmax - r.xmin << "\" height=\"" << r.ymax - r.ymin
       << "\" fill=\"steelblue\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace papersurf
