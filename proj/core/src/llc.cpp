#include "papersurf/llc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "papersurf/error.hpp"
#include "papersurf/measure.hpp"

namespace papersurf {

QuotientGrid::QuotientGrid(const PairingScheme& scheme, double h) : scheme_(&scheme), h_(h) {
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
  const auto& dom = scheme.domain();
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const Polygon& P = dom[p];
    const Rect b = P.bounds();
    Block blk;
    blk.x0 = b.xmin;
    blk.y0 = b.ymin;
    blk.nx = static_cast<std::size_t>(std::ceil((b.xmax - b.xmin) / h - 1e-9));
    blk.ny = static_cast<std::size_t>(std::ceil((b.ymax - b.ymin) / h - 1e-9));
    if (static_cast<double>(blk.nx) * static_cast<double>(blk.ny) > 5e7) throw DomainError("grid spacing too fine");
    blk.id.assign(blk.nx * blk.ny, -1);
    for (std::size_t j = 0; j < blk.ny; ++j) {
      for (std::size_t i = 0; i < blk.nx; ++i) {
        const Point2 c{blk.x0 + (static_cast<double>(i) + 0.5) * h, blk.y0 + (static_cast<double>(j) + 0.5) * h};
        if (!P.contains(c, 0.0)) continue;
        blk.id[j * blk.nx + i] = static_cast<std::int64_t>(cells_.size());
        cells_.push_back({p, i, j});
      }
    }
    blocks_.push_back(std::move(blk));
  }
  links_.assign(cells_.size(), {});

  // Boundary points are nudged a quarter cell inward before locating.
  const auto boundary_cell = [&](BoundaryPoint bp) {
    bp = scheme.normalize(bp);
    const Polygon& P = scheme.polygon(bp.polygon);
    const Point2 n = P.inward_normal(P.edge_at(bp.s));
    return cell_of({bp.polygon, P.point_at(bp.s) + (0.25 * h) * n});
  };
  for (const auto& e : scheme.expanded()) {
    // Midpoints of sub-intervals no longer than h: each paired pair of
    // points is then within h/2 of a sample.
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(e.len / h - 1e-9)));
    for (std::size_t k = 0; k < n; ++k) {
      const double tau = e.len * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
      link(boundary_cell({e.a_polygon, e.a_start + tau}), boundary_cell({e.b_polygon, e.b_start + e.len - tau}));
    }
  }
  // Accumulation points are reached by no single pairing.
  for (const auto& acc : scheme.singular_points()) {
    const auto cls = scheme.identify(acc);
    const std::size_t first = boundary_cell(acc);
    for (const auto& m : cls) link(first, boundary_cell(m));
  }
}

void QuotientGrid::link(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (std::find(links_[a].begin(), links_[a].end(), b) != links_[a].end()) return;
  links_[a].push_back(b);
  links_[b].push_back(a);
  ++link_pairs_;
}

SurfacePoint QuotientGrid::center(std::size_t cell) const {
  const Cell& c = cells_[cell];
  const Block& b = blocks_[c.polygon];
  return {c.polygon, {b.x0 + (static_cast<double>(c.ix) + 0.5) * h_, b.y0 + (static_cast<double>(c.iy) + 0.5) * h_}};
}

std::size_t QuotientGrid::cell_of(SurfacePoint p) const {
  if (p.polygon >= blocks_.size()) throw DomainError("cell_of: bad polygon index");
  const Block& b = blocks_[p.polygon];
  const auto clampi = [](double v, std::size_t n) {
    return static_cast<std::ptrdiff_t>(std::clamp(std::floor(v), 0.0, static_cast<double>(n) - 1.0));
  };
  const std::ptrdiff_t ix = clampi((p.p.x - b.x0) / h_, b.nx), iy = clampi((p.p.y - b.y0) / h_, b.ny);
  std::int64_t best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t ring = 0; ring <= 3 && best < 0; ++ring) {
    for (std::ptrdiff_t dy = -ring; dy <= ring; ++dy) {
      for (std::ptrdiff_t dx = -ring; dx <= ring; ++dx) {
        const std::ptrdiff_t x = ix + dx, y = iy + dy;
        if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(b.nx) || y >= static_cast<std::ptrdiff_t>(b.ny)) continue;
        const std::int64_t id = b.id[static_cast<std::size_t>(y) * b.nx + static_cast<std::size_t>(x)];
        if (id < 0) continue;
        const double d = distance(center(static_cast<std::size_t>(id)).p, p.p, Metric::euclidean);
        if (d < best_d) {
          best_d = d;
          best = id;
        }
      }
    }
  }
  if (best < 0) throw DomainError("point has no grid cell nearby; grid too coarse");
  return static_cast<std::size_t>(best);
}

std::vector<std::size_t> QuotientGrid::adjacent(std::size_t cell) const {
  std::vector<std::size_t> out;
  const Cell& c = cells_[cell];
  const Block& b = blocks_[c.polygon];
  const auto try_add = [&](std::size_t x, std::size_t y) {
    const std::int64_t id = b.id[y * b.nx + x];
    if (id >= 0) out.push_back(static_cast<std::size_t>(id));
  };
  if (c.ix > 0) try_add(c.ix - 1, c.iy);
  if (c.ix + 1 < b.nx) try_add(c.ix + 1, c.iy);
  if (c.iy > 0) try_add(c.ix, c.iy - 1);
  if (c.iy + 1 < b.ny) try_add(c.ix, c.iy + 1);
  out.insert(out.end(), links_[cell].begin(), links_[cell].end());
  return out;
}

bool QuotientGrid::adjacent_or_linked(std::size_t a, std::size_t b) const {
  const auto adj = adjacent(a);
  return std::find(adj.begin(), adj.end(), b) != adj.end();
}

std::vector<char> QuotientGrid::mark(const BallDecomposition& dec) const {
  std::vector<char> in(cells_.size(), 0);
  for (const auto& piece : dec.pieces) {
    const Block& b = blocks_[piece.center.polygon];
    const double cx = piece.center.p.x, cy = piece.center.p.y, R = piece.radius;
    const auto lo = [&](double v, double o) { return static_cast<std::ptrdiff_t>(std::floor((v - o) / h_)) - 1; };
    const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, lo(cx - R, b.x0));
    const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, lo(cy - R, b.y0));
    const std::ptrdiff_t i1 = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(b.nx) - 1, lo(cx + R, b.x0) + 2);
    const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(b.ny) - 1, lo(cy + R, b.y0) + 2);
    for (std::ptrdiff_t j = j0; j <= j1; ++j) {
      const double y = b.y0 + (static_cast<double>(j) + 0.5) * h_;
      if (std::abs(y - cy) >= R) continue;
      for (std::ptrdiff_t i = i0; i <= i1; ++i) {
        const double x = b.x0 + (static_cast<double>(i) + 0.5) * h_;
        if (std::abs(x - cx) >= R) continue;
        const std::int64_t id = b.id[static_cast<std::size_t>(j) * b.nx + static_cast<std::size_t>(i)];
        if (id >= 0) in[static_cast<std::size_t>(id)] = 1;
      }
    }
  }
  return in;
}

namespace {

std::vector<std::int64_t> label_components(const QuotientGrid& g, const std::vector<char>& blocked, std::size_t* count) {
  std::vector<std::int64_t> label(g.size(), -1);
  std::size_t n = 0;
  std::deque<std::size_t> q;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (blocked[s] || label[s] >= 0) continue;
    label[s] = static_cast<std::int64_t>(n);
    q.push_back(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : g.adjacent(u)) {
        if (blocked[v] || label[v] >= 0) continue;
        label[v] = static_cast<std::int64_t>(n);
        q.push_back(v);
      }
    }
    ++n;
  }
  if (count) *count = n;
  return label;
}

// BFS tree from `root` over unblocked cells; parent of root is itself.
std::vector<std::int64_t> bfs_tree(const QuotientGrid& g, std::size_t root, const std::vector<char>& blocked) {
  std::vector<std::int64_t> parent(g.size(), -1);
  if (blocked[root]) return parent;
  parent[root] = static_cast<std::int64_t>(root);
  std::deque<std::size_t> q{root};
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    for (std::size_t v : g.adjacent(u)) {
      if (blocked[v] || parent[v] >= 0) continue;
      parent[v] = static_cast<std::int64_t>(u);
      q.push_back(v);
    }
  }
  return parent;
}

// Path from x up the tree to its root.
std::vector<std::size_t> to_root(const std::vector<std::int64_t>& parent, std::size_t x) {
  std::vector<std::size_t> out;
  if (parent[x] < 0) return out;
  for (std::size_t v = x;; v = static_cast<std::size_t>(parent[v])) {
    out.push_back(v);
    if (parent[v] == static_cast<std::int64_t>(v)) break;
  }
  return out;
}

}  // namespace

std::size_t QuotientGrid::components(const std::vector<char>& blocked) const {
  std::size_t n = 0;
  label_components(*this, blocked, &n);
  return n;
}

std::vector<std::size_t> QuotientGrid::path(std::size_t from, std::size_t to, const std::vector<char>& blocked) const {
  const auto parent = bfs_tree(*this, to, blocked);
  return to_root(parent, from);
}

QuotientGrid build_grid(const PairingScheme& scheme, double h) {
  const double d_min = scheme.domain().min_nonadjacent_distance(Metric::max);
  const double shortest = scheme.shortest_pairing();
  if (!(h < d_min / 4.0) || !(h < shortest / 4.0)) {
    throw DomainError("grid spacing " + std::to_string(h) + " must be below d_min/4 = " + std::to_string(d_min / 4.0) +
                      " and shortest pairing/4 = " + std::to_string(shortest / 4.0));
  }
  return QuotientGrid(scheme, h);
}

bool complement_connected(const PairingScheme& scheme, const QuotientGrid& grid, SurfacePoint center, double r) {
  const double diam = scheme.domain().diameter(Metric::max);
  if (r >= diam) throw DomainError("complement_connected: radius must be below the diameter");
  const auto in = grid.mark(decompose_ball(scheme, center, r));
  if (std::all_of(in.begin(), in.end(), [](char c) { return c != 0; })) {
    throw DomainError("complement_connected: the ball covers the whole grid");
  }
  return grid.components(in) == 1;
}

bool LLCReport::all_ok() const {
  return std::all_of(samples.begin(), samples.end(), [](const LLCSample& s) { return s.llc1_ok && s.llc2_ok; });
}

std::string LLCReport::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "center_x,center_y,r,llc1,llc2,lambda\n";
  for (const auto& s : samples) {
    os << s.center.p.x << ',' << s.center.p.y << ',' << s.r << ',' << (s.llc1_ok ? 1 : 0) << ','
       << (s.llc2_ok ? 1 : 0) << ',' << lambda_tested << '\n';
  }
  return os.str();
}

LLCReport llc_check(const PairingScheme& scheme, const QuotientGrid& grid, double lambda,
                    std::span<const std::pair<SurfacePoint, double>> samples, const LLCOptions& opts) {
  if (!(lambda >= 1.0)) throw DomainError("llc_check: lambda must be at least 1");
  LLCReport rep;
  rep.lambda_tested = lambda;
  const std::vector<char> none(grid.size(), 0);
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const auto& [a, r] = samples[si];
    LLCSample out{a, r, true, true, {}, {}};
    const auto in_r = grid.mark(decompose_ball(scheme, a, r));
    const auto in_big = grid.mark(decompose_ball(scheme, a, lambda * r));
    const auto in_small = grid.mark(decompose_ball(scheme, a, r / lambda));
    std::vector<std::size_t> inside, outside;
    for (std::size_t c = 0; c < grid.size(); ++c) (in_r[c] ? inside : outside).push_back(c);
    std::mt19937_64 rng(opts.seed + si);

    const std::size_t ac = grid.cell_of(a);
    const auto tree = bfs_tree(grid, ac, none);
    if (!inside.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
      for (std::size_t k = 0; k < opts.pairs_per_sample; ++k) {
        const std::size_t x = inside[pick(rng)], y = inside[pick(rng)];
        auto px = to_root(tree, x);
        auto py = to_root(tree, y);
        std::reverse(py.begin(), py.end());
        std::vector<std::size_t> chain = px;
        chain.insert(chain.end(), py.begin() + (py.empty() ? 0 : 1), py.end());
        const bool ok = !px.empty() && !py.empty() &&
                        std::all_of(chain.begin(), chain.end(), [&](std::size_t c) { return in_big[c] != 0; });
        if (k == 0 || (!ok && out.llc1_ok)) out.llc1_witness = chain;
        out.llc1_ok = out.llc1_ok && ok;
      }
    }
    if (!outside.empty()) {
      std::size_t ncomp = 0;
      const auto label = label_components(grid, in_small, &ncomp);
      std::uniform_int_distribution<std::size_t> pick(0, outside.size() - 1);
      for (std::size_t k = 0; k < opts.pairs_per_sample; ++k) {
        const std::size_t x = outside[pick(rng)], y = outside[pick(rng)];
        const bool ok = label[x] >= 0 && label[x] == label[y];
        if (k == 0) out.llc2_witness = grid.path(x, y, in_small);
        out.llc2_ok = out.llc2_ok && ok;
      }
    }
    rep.samples.push_back(std::move(out));
  }
  return rep;
}

LLCReport llc_lambda_search(const PairingScheme& scheme, const QuotientGrid& grid, std::span<const double> lambdas,
                            std::span<const std::pair<SurfacePoint, double>> samples, const LLCOptions& opts) {
  if (lambdas.empty()) throw DomainError("llc_lambda_search: no lambda values");
  std::vector<double> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());
  LLCReport rep;
  for (double l : sorted) {
    rep = llc_check(scheme, grid, l, samples, opts);
    if (rep.all_ok()) {
      rep.lambda_empirical = l;
      return rep;
    }
  }
  return rep;
}

}  // namespace papersurf
