#ifndef PAPERSURF_QUOTIENT_HPP_
#define PAPERSURF_QUOTIENT_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "papersurf/scheme.hpp"

namespace papersurf {

/// One point of an R-chain. `jump` marks an identification with the previous
/// point; otherwise the previous point is joined by a straight hop.
struct ChainStep {
  SurfacePoint point;
  bool jump = false;
};

struct DistanceResult {
  double value = std::numeric_limits<double>::infinity();
  std::vector<ChainStep> path;
  double h = 0.0;
  bool converged = true;
};

/// Locates p in the domain; throws DomainError if it lies in no polygon.
SurfacePoint locate(const PairingScheme& scheme, Point2 p);

/// Discretized R-chain graph. Nodes are boundary samples on the lattice
/// h*Z of every polygon's arc length, all vertices, pairing endpoints and
/// accumulation points, the images of all of these under the pairings, and
/// reflex vertices. Identified nodes are joined by zero-cost edges; nodes of
/// one polygon by straight hops measured in the metric. Query points are
/// attached as terminals only, so the graph does not depend on the queries.
class ChainGraph {
 public:
  ChainGraph(const PairingScheme& scheme, Metric metric, double h);

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] double spacing() const { return h_; }
  [[nodiscard]] Metric metric() const { return metric_; }
  [[nodiscard]] const PairingScheme& scheme() const { return *scheme_; }

  /// Shortest chain from x to y, with its path.
  [[nodiscard]] DistanceResult distance(SurfacePoint x, SurfacePoint y) const;
  /// Shortest-chain lengths from x to each target.
  [[nodiscard]] std::vector<double> distances(SurfacePoint x, std::span<const SurfacePoint> targets) const;
  /// Graph distances of all nodes from x, not searching beyond `bound`.
  /// Entries past the bound are +inf.
  [[nodiscard]] std::vector<double> node_distances(SurfacePoint x, double bound) const;
  [[nodiscard]] SurfacePoint node_point(std::size_t i) const { return {nodes_[i].polygon, nodes_[i].p}; }

 private:
  struct Node {
    std::size_t polygon;
    Point2 p;
  };
  struct Terminal {
    std::size_t polygon;
    Point2 p;
  };
  struct Grid {
    double x0 = 0, y0 = 0, cell = 1;
    std::size_t nx = 1, ny = 1;
    std::vector<std::vector<std::size_t>> cells;
  };

  /// Best way found to reach one target: through graph node `node`, or
  /// directly from the source when node < 0.
  struct Arrival {
    double value = std::numeric_limits<double>::infinity();
    std::ptrdiff_t node = -1;
    std::size_t src_member = 0;
    std::size_t dst_member = 0;
  };
  struct Search {
    std::vector<double> dist;
    std::vector<std::ptrdiff_t> pred;  // -1: reached straight from the source
    std::vector<std::size_t> origin;   // source member used when pred == -1
    std::vector<Arrival> arrivals;
  };

  [[nodiscard]] std::vector<Terminal> terminals(SurfacePoint q) const;
  [[nodiscard]] double hop(std::size_t polygon, Point2 a, Point2 b) const;
  template <class Visit>
  void for_each_near(std::size_t polygon, Point2 c, double radius, Visit&& visit) const;
  [[nodiscard]] Search search(const std::vector<Terminal>& src, const std::vector<std::vector<Terminal>>& targets,
                              double bound) const;

  const PairingScheme* scheme_;
  Metric metric_;
  double h_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> zero_;
  std::vector<Grid> grids_;
  std::vector<char> convex_;
};

/// Quotient distance at sample spacing h.
DistanceResult quotient_distance(const PairingScheme& scheme, SurfacePoint x, SurfacePoint y, Metric m, double h);

/// Symmetric matrix of quotient distances on one graph.
std::vector<std::vector<double>> distance_matrix(const PairingScheme& scheme, std::span<const SurfacePoint> points,
                                                 Metric m, double h);

/// Halves h from h0 until successive values differ by less than tol, at most
/// 12 times. The result carries converged = false when the cap is hit.
DistanceResult refine_until(const PairingScheme& scheme, SurfacePoint x, SurfacePoint y, Metric m, double h0,
                            double tol);

/// min(d_min, shortest pairing) / 50.
double default_spacing(const PairingScheme& scheme, Metric m);

}  // namespace papersurf

#endif  // PAPERSURF_QUOTIENT_HPP_
