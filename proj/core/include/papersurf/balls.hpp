#ifndef PAPERSURF_BALLS_HPP_
#define PAPERSURF_BALLS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "papersurf/scheme.hpp"

namespace papersurf {

enum class Provenance { main, conic_spawn, accumulation_spawn, vertex_spawn };

/// Max-metric box [c - r, c + r]^2 clipped to one polygon.
struct BallPiece {
  SurfacePoint center;
  double radius = 0.0;
  Provenance provenance = Provenance::main;
  /// Pairing index (conic), W index (accumulation) or vertex index.
  std::size_t index = 0;

  [[nodiscard]] Rect box() const {
    return {center.p.x - radius, center.p.y - radius, center.p.x + radius, center.p.y + radius};
  }
  /// "main", "conic-spawn(3)", ...
  [[nodiscard]] std::string tag() const;
};

struct BallDecomposition {
  SurfacePoint center;
  double r = 0.0;
  std::vector<BallPiece> pieces;
  /// Area that may be missing: pieces below eps_min and unexpanded W tails.
  double tail_area_bound = 0.0;
  /// Class of the center when it lies on the boundary.
  std::optional<PointClass> center_class;
};

struct BallOptions {
  /// Pieces with radius <= eps_rel * r are dropped into tail_area_bound.
  double eps_rel = 1e-4;
  std::size_t max_pieces = 200000;
};

/// Decomposes the preimage of the max-metric ball B(center, r) into clipped
/// boxes. Exact for rectilinear sides in convex polygons; elsewhere the
/// pieces are box-clipped approximations.
BallDecomposition decompose_ball(const PairingScheme& scheme, SurfacePoint center, double r,
                                 const BallOptions& opts = {});

/// Membership of q (or any point identified with q) in the decomposition.
bool ball_contains(const PairingScheme& scheme, const BallDecomposition& dec, SurfacePoint q);

struct SpawnStep {
  std::size_t index = 0;
  double radius = 0.0;
};

/// Radius ladder on W spec `w`. Without `conic` the ball is centered at the
/// accumulation point: r_i = r - sum_{n>i} a_n. With conic = s+1 it is
/// centered at the far-end junction c_{s+1}: the step (s+1, r) followed by
/// r_j = r - sum_{i=j}^{s} a_i for j <= s. Only positive radii are listed and
/// finite specs stop at their last term.
std::vector<SpawnStep> spawn_schedule(const PairingScheme& scheme, std::size_t w, double r,
                                      std::optional<std::size_t> conic = std::nullopt);

/// CSV rows cx,cy,r,polygon,provenance.
std::string pieces_csv(const PairingScheme& scheme, const BallDecomposition& dec);
/// SVG drawing of the polygons and the piece boxes clipped to them.
std::string pieces_svg(const PairingScheme& scheme, const BallDecomposition& dec);

}  // namespace papersurf

#endif  // PAPERSURF_BALLS_HPP_
