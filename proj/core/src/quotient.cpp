#include "papersurf/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <string>

namespace papersurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxNodesPerPolygon = 4e6;

}  // namespace

SurfacePoint locate(const PairingScheme& scheme, Point2 p) {
  if (auto i = scheme.domain().locate(p)) return {*i, p};
  throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") lies outside the domain");
}

ChainGraph::ChainGraph(const PairingScheme& scheme, Metric metric, double h)
    : scheme_(&scheme), metric_(metric), h_(h) {
  if (!(h > 0.0)) throw DomainError("sample spacing must be positive");
  const auto& dom = scheme.domain();
  const std::size_t npoly = dom.size();
  for (std::size_t i = 0; i < npoly; ++i) {
    if (dom[i].perimeter() / h > kMaxNodesPerPolygon) throw DomainError("sample spacing too fine for the domain");
    convex_.push_back(dom[i].is_convex() ? 1 : 0);
  }

  std::vector<std::map<double, std::size_t>> index(npoly);
  std::deque<std::size_t> fresh;
  std::vector<double> coord;
  const auto add = [&](BoundaryPoint bp) -> std::size_t {
    bp = scheme.normalize(bp);
    auto& idx = index[bp.polygon];
    const double per = dom[bp.polygon].perimeter();
    auto it = idx.lower_bound(bp.s - kCoordTol);
    if (it != idx.end() && it->first <= bp.s + kCoordTol) return it->second;
    if (bp.s < kCoordTol && !idx.empty() && idx.rbegin()->first > per - kCoordTol) return idx.rbegin()->second;
    if (bp.s > per - kCoordTol && !idx.empty() && idx.begin()->first < kCoordTol) return idx.begin()->second;
    const std::size_t id = nodes_.size();
    nodes_.push_back({bp.polygon, scheme.position(bp)});
    coord.push_back(bp.s);
    idx.emplace(bp.s, id);
    fresh.push_back(id);
    return id;
  };

  for (std::size_t i = 0; i < npoly; ++i) {
    const auto count = static_cast<std::size_t>(std::ceil(dom[i].perimeter() / h - 1e-9));
    for (std::size_t k = 0; k < count; ++k) add({i, static_cast<double>(k) * h});
    for (std::size_t v = 0; v < dom[i].size(); ++v) add({i, dom[i].vertex_coordinate(v)});
  }
  for (const auto& e : scheme.expanded()) {
    add({e.a_polygon, e.a_start});
    add({e.a_polygon, e.a_start + e.len});
    add({e.b_polygon, e.b_start});
    add({e.b_polygon, e.b_start + e.len});
  }
  for (const auto& cls : scheme.special_classes()) {
    for (const auto& m : cls.members) add(m);
  }

  std::vector<std::pair<std::size_t, std::size_t>> links;
  const std::size_t cap = 64 * nodes_.size() + 1024;
  while (!fresh.empty()) {
    if (nodes_.size() > cap) throw DomainError("identification closure did not terminate");
    const std::size_t u = fresh.front();
    fresh.pop_front();
    for (const auto& q : scheme.partners({nodes_[u].polygon, coord[u]})) {
      const std::size_t v = add(q);
      if (v != u) links.push_back({std::min(u, v), std::max(u, v)});
    }
  }
  // Members of special classes (including accumulation points, which no
  // single pairing reaches) are tied together explicitly.
  for (const auto& cls : scheme.special_classes()) {
    for (std::size_t k = 1; k < cls.members.size(); ++k) {
      const std::size_t u = add(cls.members[k - 1]);
      const std::size_t v = add(cls.members[k]);
      if (u != v) links.push_back({std::min(u, v), std::max(u, v)});
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  zero_.assign(nodes_.size(), {});
  for (const auto& [u, v] : links) {
    zero_[u].push_back(v);
    zero_[v].push_back(u);
  }

  grids_.resize(npoly);
  for (std::size_t i = 0; i < npoly; ++i) {
    const Rect b = dom[i].bounds();
    auto& g = grids_[i];
    const double extent = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    g.cell = std::max(4.0 * h, extent / 512.0);
    g.x0 = b.xmin;
    g.y0 = b.ymin;
    g.nx = static_cast<std::size_t>((b.xmax - b.xmin) / g.cell) + 1;
    g.ny = static_cast<std::size_t>((b.ymax - b.ymin) / g.cell) + 1;
    g.cells.assign(g.nx * g.ny, {});
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    auto& g = grids_[nodes_[id].polygon];
    const auto ix = std::min(g.nx - 1, static_cast<std::size_t>(std::max(0.0, (nodes_[id].p.x - g.x0) / g.cell)));
    const auto iy = std::min(g.ny - 1, static_cast<std::size_t>(std::max(0.0, (nodes_[id].p.y - g.y0) / g.cell)));
    g.cells[iy * g.nx + ix].push_back(id);
  }
}

double ChainGraph::hop(std::size_t polygon, Point2 a, Point2 b) const {
  if (!convex_[polygon] && !scheme_->polygon(polygon).sees(a, b)) return kInf;
  // Points closer than kCoordTol are one point (arc-length round-off).
  const double d = papersurf::distance(a, b, metric_);
  return d < kCoordTol ? 0.0 : d;
}

template <class Visit>
void ChainGraph::for_each_near(std::size_t polygon, Point2 c, double radius, Visit&& visit) const {
  const auto& g = grids_[polygon];
  const auto lo = [&](double v, double o) {
    const double t = std::floor((v - o) / g.cell);
    return t < 0.0 ? std::size_t{0} : static_cast<std::size_t>(t);
  };
  const auto hi = [&](double v, double o, std::size_t n) {
    const double t = std::floor((v - o) / g.cell);
    if (t < 0.0) return std::ptrdiff_t{-1};
    return static_cast<std::ptrdiff_t>(std::min<double>(t, static_cast<double>(n - 1)));
  };
  const double r = std::isfinite(radius) ? radius : 1e300;
  const std::size_t x0 = lo(c.x - r, g.x0), y0 = lo(c.y - r, g.y0);
  const std::ptrdiff_t x1 = hi(c.x + r, g.x0, g.nx), y1 = hi(c.y + r, g.y0, g.ny);
  for (std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(y0); iy <= y1; ++iy) {
    for (std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(x0); ix <= x1; ++ix) {
      for (std::size_t id : g.cells[static_cast<std::size_t>(iy) * g.nx + static_cast<std::size_t>(ix)]) visit(id);
    }
  }
}

std::vector<ChainGraph::Terminal> ChainGraph::terminals(SurfacePoint q) const {
  const auto& dom = scheme_->domain();
  if (q.polygon >= dom.size() || !dom[q.polygon].contains(q.p, 1e-9)) {
    throw DomainError("query point (" + std::to_string(q.p.x) + ", " + std::to_string(q.p.y) +
                      ") is not in polygon " + std::to_string(q.polygon));
  }
  std::vector<Terminal> out{{q.polygon, q.p}};
  if (auto bp = scheme_->boundary_point(q)) {
    for (const auto& m : scheme_->identify(*bp)) {
      if (scheme_->same_point(m, *bp)) continue;
      out.push_back({m.polygon, scheme_->position(m)});
    }
  }
  return out;
}

ChainGraph::Search ChainGraph::search(const std::vector<Terminal>& src,
                                      const std::vector<std::vector<Terminal>>& targets, double bound) const {
  Search s;
  const std::size_t n = nodes_.size();
  s.dist.assign(n, kInf);
  s.pred.assign(n, -2);
  s.origin.assign(n, 0);
  s.arrivals.assign(targets.size(), {});
  std::vector<char> done(n, 0);

  for (std::size_t j = 0; j < targets.size(); ++j) {
    for (std::size_t k = 0; k < targets[j].size(); ++k) {
      for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i].polygon != targets[j][k].polygon) continue;
        const double v = hop(src[i].polygon, src[i].p, targets[j][k].p);
        if (v < s.arrivals[j].value) s.arrivals[j] = {v, -1, i, k};
      }
    }
  }
  const auto limit = [&]() {
    if (targets.empty()) return bound;
    double worst = 0.0;
    for (const auto& a : s.arrivals) worst = std::max(worst, a.value);
    return std::min(bound, worst);
  };

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double lim = limit();
    for_each_near(src[i].polygon, src[i].p, lim, [&](std::size_t v) {
      const double w = hop(src[i].polygon, src[i].p, nodes_[v].p);
      if (w < s.dist[v] && w < lim) {
        s.dist[v] = w;
        s.pred[v] = -1;
        s.origin[v] = i;
        pq.push({w, v});
      }
    });
  }
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u] || d > s.dist[u]) continue;
    if (d >= limit()) break;
    done[u] = 1;
    const Node& nu = nodes_[u];
    for (std::size_t j = 0; j < targets.size(); ++j) {
      for (std::size_t k = 0; k < targets[j].size(); ++k) {
        if (targets[j][k].polygon != nu.polygon) continue;
        const double v = d + hop(nu.polygon, nu.p, targets[j][k].p);
        if (v < s.arrivals[j].value) s.arrivals[j] = {v, static_cast<std::ptrdiff_t>(u), 0, k};
      }
    }
    for (std::size_t v : zero_[u]) {
      if (d < s.dist[v]) {
        s.dist[v] = d;
        s.pred[v] = static_cast<std::ptrdiff_t>(u);
        pq.push({d, v});
      }
    }
    const double lim = limit();
    for_each_near(nu.polygon, nu.p, lim - d, [&](std::size_t v) {
      if (done[v]) return;
      const double nd = d + hop(nu.polygon, nu.p, nodes_[v].p);
      if (nd < s.dist[v] && nd < lim) {
        s.dist[v] = nd;
        s.pred[v] = static_cast<std::ptrdiff_t>(u);
        pq.push({nd, v});
      }
    });
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!done[v]) s.dist[v] = kInf;
  }
  return s;
}

DistanceResult ChainGraph::distance(SurfacePoint x, SurfacePoint y) const {
  const auto src = terminals(x);
  const auto dst = terminals(y);
  const auto s = search(src, {dst}, kInf);
  const Arrival& a = s.arrivals[0];
  DistanceResult r;
  r.value = a.value;
  r.h = h_;
  if (!std::isfinite(a.value)) return r;

  std::vector<std::size_t> chain;
  std::size_t first_src = a.src_member;
  if (a.node >= 0) {
    for (std::ptrdiff_t v = a.node; v >= 0; v = s.pred[static_cast<std::size_t>(v)]) {
      chain.push_back(static_cast<std::size_t>(v));
      if (s.pred[static_cast<std::size_t>(v)] == -1) first_src = s.origin[static_cast<std::size_t>(v)];
    }
    std::reverse(chain.begin(), chain.end());
  }
  const auto push = [&](SurfacePoint p, bool identified) {
    if (!r.path.empty()) {
      const auto& last = r.path.back().point;
      if (last.polygon == p.polygon && last.p == p.p) return;
    }
    r.path.push_back({p, identified && !r.path.empty()});
  };
  push(x, false);
  push({src[first_src].polygon, src[first_src].p}, true);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Node& nd = nodes_[chain[k]];
    bool zero_edge = false;
    if (k > 0) {
      const auto& z = zero_[chain[k - 1]];
      zero_edge = std::find(z.begin(), z.end(), chain[k]) != z.end() &&
                  s.dist[chain[k]] == s.dist[chain[k - 1]];
    }
    push({nd.polygon, nd.p}, zero_edge);
  }
  push({dst[a.dst_member].polygon, dst[a.dst_member].p}, false);
  push(y, true);
  return r;
}

std::vector<double> ChainGraph::distances(SurfacePoint x, std::span<const SurfacePoint> targets) const {
  std::vector<std::vector<Terminal>> dst;
  for (const auto& t : targets) dst.push_back(terminals(t));
  const auto s = search(terminals(x), dst, kInf);
  std::vector<double> out;
  for (const auto& a : s.arrivals) out.push_back(a.value);
  return out;
}

std::vector<double> ChainGraph::node_distances(SurfacePoint x, double bound) const {
  return search(terminals(x), {}, bound).dist;
}

DistanceResult quotient_distance(const PairingScheme& scheme, SurfacePoint x, SurfacePoint y, Metric m, double h) {
  const ChainGraph g(scheme, m, h);
  return g.distance(x, y);
}

std::vector<std::vector<double>> distance_matrix(const PairingScheme& scheme, std::span<const SurfacePoint> points,
                                                 Metric m, double h) {
  const ChainGraph g(scheme, m, h);
  const std::size_t n = points.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = g.distances(points[i], points);
    for (std::size_t j = 0; j < n; ++j) out[i][j] = row[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) out[i][j] = out[j][i] = std::min(out[i][j], out[j][i]);
  }
  return out;
}

DistanceResult refine_until(const PairingScheme& scheme, SurfacePoint x, SurfacePoint y, Metric m, double h0,
                            double tol) {
  if (!(tol > 0.0)) throw DomainError("refine_until: tolerance must be positive");
  double h = h0;
  DistanceResult prev = quotient_distance(scheme, x, y, m, h);
  for (int k = 0; k < 12; ++k) {
    h *= 0.5;
    DistanceResult cur = quotient_distance(scheme, x, y, m, h);
    if (std::abs(cur.value - prev.value) < tol) return cur;
    prev = std::move(cur);
  }
  prev.converged = false;
  return prev;
}

double default_spacing(const PairingScheme& scheme, Metric m) {
  return std::min(scheme.domain().min_nonadjacent_distance(m), scheme.shortest_pairing()) / 50.0;
}

}  // namespace papersurf
