#ifndef PAPERSURF_LLC_HPP_
#define PAPERSURF_LLC_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "papersurf/balls.hpp"

namespace papersurf {

/// Square cells of side h over every polygon (a cell exists when its center
/// lies inside the polygon), 4-neighbor adjacency within a polygon, and
/// identification links between cells holding paired boundary points.
class QuotientGrid {
 public:
  QuotientGrid(const PairingScheme& scheme, double h);

  [[nodiscard]] double spacing() const { return h_; }
  [[nodiscard]] std::size_t size() const { return cells_.size(); }
  [[nodiscard]] std::size_t link_pairs() const { return link_pairs_; }
  [[nodiscard]] const PairingScheme& scheme() const { return *scheme_; }

  [[nodiscard]] SurfacePoint center(std::size_t cell) const;
  /// Cell containing p, or the nearest existing cell of that polygon.
  [[nodiscard]] std::size_t cell_of(SurfacePoint p) const;
  [[nodiscard]] const std::vector<std::size_t>& links(std::size_t cell) const { return links_[cell]; }
  /// Neighbors within the polygon followed by linked cells.
  [[nodiscard]] std::vector<std::size_t> adjacent(std::size_t cell) const;
  [[nodiscard]] bool adjacent_or_linked(std::size_t a, std::size_t b) const;

  /// Cells whose centers lie in the decomposition's pieces.
  [[nodiscard]] std::vector<char> mark(const BallDecomposition& dec) const;
  /// Number of connected components of the cells with mask[c] == 0.
  [[nodiscard]] std::size_t components(const std::vector<char>& blocked) const;
  /// Shortest path (in steps) avoiding blocked cells, empty if none.
  [[nodiscard]] std::vector<std::size_t> path(std::size_t from, std::size_t to, const std::vector<char>& blocked) const;

 private:
  struct Block {
    double x0 = 0, y0 = 0;
    std::size_t nx = 0, ny = 0;
    std::vector<std::int64_t> id;
  };
  struct Cell {
    std::size_t polygon;
    std::size_t ix, iy;
  };

  void link(std::size_t a, std::size_t b);

  const PairingScheme* scheme_;
  double h_;
  std::vector<Block> blocks_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> links_;
  std::size_t link_pairs_ = 0;
};

/// Grid for the scheme. Requires h < d_min/4 and h < shortest pairing/4.
QuotientGrid build_grid(const PairingScheme& scheme, double h);

/// Whether the cells outside B(center, r) form one linked component.
/// Throws DomainError when r >= diam or the ball covers every cell.
bool complement_connected(const PairingScheme& scheme, const QuotientGrid& grid, SurfacePoint center, double r);

struct LLCSample {
  SurfacePoint center;
  double r = 0.0;
  bool llc1_ok = false;
  bool llc2_ok = false;
  /// x -> a -> y path of one tested pair, and one complement path.
  std::vector<std::size_t> llc1_witness;
  std::vector<std::size_t> llc2_witness;
};

struct LLCReport {
  double lambda_tested = 0.0;
  std::vector<LLCSample> samples;
  /// Smallest tested lambda passing every sample (llc_lambda_search only).
  std::optional<double> lambda_empirical;

  [[nodiscard]] bool all_ok() const;
  [[nodiscard]] std::string csv() const;
};

struct LLCOptions {
  std::size_t pairs_per_sample = 8;
  std::uint64_t seed = 1;
};

/// LLC1: for point pairs x, y in B(a, r) the grid geodesics x -> a -> y stay
/// in B(a, lambda r). LLC2: pairs outside B(a, r) are joined by a grid path
/// avoiding B(a, r/lambda).
LLCReport llc_check(const PairingScheme& scheme, const QuotientGrid& grid, double lambda,
                    std::span<const std::pair<SurfacePoint, double>> samples, const LLCOptions& opts = {});

/// Runs llc_check for each lambda (ascending) and records the smallest one
/// that passes; the returned report is the one for that lambda (or the last).
LLCReport llc_lambda_search(const PairingScheme& scheme, const QuotientGrid& grid, std::span<const double> lambdas,
                            std::span<const std::pair<SurfacePoint, double>> samples, const LLCOptions& opts = {});

}  // namespace papersurf

#endif  // PAPERSURF_LLC_HPP_
