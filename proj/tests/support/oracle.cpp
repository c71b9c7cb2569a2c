#include "oracle.hpp"

#include "papersurf/measure.hpp"
#include "papersurf/quotient.hpp"

#include <cmath>
#include <limits>

namespace oracle {

namespace {

bool segment_inside(const std::function<bool(Point2)>& inside, Point2 a, Point2 b) {
  constexpr int kSteps = 400;
  for (int i = 0; i <= kSteps; ++i) {
    const double t = static_cast<double>(i) / kSteps;
    if (!inside({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)})) return false;
  }
  return true;
}

}  // namespace

double one_bend_geodesic(const std::function<bool(Point2)>& inside, papersurf::Rect box, Point2 p, Point2 q,
                         double h) {
  if (segment_inside(inside, p, q)) return std::hypot(q.x - p.x, q.y - p.y);
  double best = std::numeric_limits<double>::infinity();
  for (double x = box.xmin; x <= box.xmax + 1e-12; x += h) {
    for (double y = box.ymin; y <= box.ymax + 1e-12; y += h) {
      const Point2 v{x, y};
      if (!inside(v)) continue;
      const double len = std::hypot(v.x - p.x, v.y - p.y) + std::hypot(q.x - v.x, q.y - v.y);
      if (len >= best) continue;
      if (segment_inside(inside, p, v) && segment_inside(inside, v, q)) best = len;
    }
  }
  return best;
}

}  // namespace oracle

namespace oracle {

std::vector<papersurf::BallPiece> distance_ball(const papersurf::PairingScheme& scheme, papersurf::SurfacePoint center,
                                               double r, double h) {
  using namespace papersurf;
  std::vector<BallPiece> out{{center, r, Provenance::main, 0}};
  if (auto bp = scheme.boundary_point(center)) {
    for (const auto& m : scheme.identify(*bp)) out.push_back({scheme.surface_point(m), r, Provenance::main, 0});
  }
  const ChainGraph g(scheme, Metric::max, h);
  const auto dist = g.node_distances(center, r);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] < r) out.push_back({g.node_point(v), r - dist[v], Provenance::main, 0});
  }
  return out;
}

double symmetric_difference(const papersurf::PairingScheme& scheme, const std::vector<papersurf::BallPiece>& a,
                            const std::vector<papersurf::BallPiece>& b) {
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  return 2.0 * papersurf::union_area(scheme, both).value - papersurf::union_area(scheme, a).value -
         papersurf::union_area(scheme, b).value;
}

}  // namespace oracle
