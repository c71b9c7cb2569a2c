#ifndef PAPERSURF_MEASURE_HPP_
#define PAPERSURF_MEASURE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "papersurf/balls.hpp"

namespace papersurf {

/// Exact area of a union of axis-aligned rectangles (sweep + segment tree).
double rect_union_area(std::span<const Rect> rects);

struct AreaResult {
  double value = 0.0;
  /// Zero when exact; otherwise the Monte-Carlo standard error.
  double std_error = 0.0;
  bool exact = true;
  std::uint64_t seed = 0;
};

/// Area of the union of piece boxes clipped to their polygons. Exact when
/// every polygon involved is rectilinear; otherwise stratified Monte Carlo
/// refined until the relative standard error is at most 0.5%.
AreaResult union_area(const PairingScheme& scheme, std::span<const BallPiece> pieces, std::uint64_t seed = 1);

struct BallArea {
  double area = 0.0;
  double tail_bound = 0.0;
  bool exact = true;
  std::size_t pieces = 0;
};

BallArea ball_area(const PairingScheme& scheme, SurfacePoint center, double r, const BallOptions& opts = {});

/// Scale constants: K = diam/d_min and r0 = diam/(2K) = d_min/2.
struct ScaleConstants {
  double diam = 0.0;
  double d_min = 0.0;
  double K = 0.0;
  double r0 = 0.0;
};

ScaleConstants scale_constants(const PairingScheme& scheme, Metric m = Metric::max);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line y = slope*x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct RegularitySample {
  SurfacePoint center;
  std::string kind;
  double r = 0.0;
  double area = 0.0;
  double ratio = 0.0;
};

struct RegularityReport {
  double r0 = 0.0;
  double K = 0.0;
  double d_min = 0.0;
  double total_area = 0.0;
  std::vector<RegularitySample> samples;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double c0 = 0.0;
  double extended_C = 0.0;
  bool regular = true;
  /// One line per offending center.
  std::vector<std::string> violations;

  [[nodiscard]] std::string csv() const;
  [[nodiscard]] std::string summary() const;
};

/// Centers covering special classes first (accumulation, singular, conic
/// vertices; at most half of n), then boundary and interior points drawn
/// alternately with the given seed.
std::vector<SurfacePoint> sample_centers(const PairingScheme& scheme, std::size_t n, std::uint64_t seed);

/// rmax * 2^-i for i = 0..n-1.
std::vector<double> log_radii(double rmax, std::size_t n);

/// Kind label of a center: "interior" or the class kind.
std::string center_kind(const PairingScheme& scheme, SurfacePoint c);

/// Ahlfors scan over centers x radii. Radii must not exceed r0. A center is
/// flagged when a ratio drops below 2 or when its ratio grows linearly in
/// log2(1/r) (slope > 0.1 with R^2 >= 0.9 over at least four radii).
RegularityReport regularity_scan(const PairingScheme& scheme, std::span<const SurfacePoint> centers,
                                 std::span<const double> radii, double Q = 2.0);

/// C = max{c0, H(X)/r0^Q}.
double extended_regularity_constant(double c0, double total_measure, double r0, double Q = 2.0);

struct ExtensionRow {
  SurfacePoint center;
  double r = 0.0;
  double area = 0.0;
  double bound = 0.0;
  /// area <= bound, and the ball contains the radius-r0 ball at the same center.
  bool ok = false;
};

/// Spot-checks C*r^2 at radii above r0.
std::vector<ExtensionRow> regularity_extension_check(const PairingScheme& scheme, const RegularityReport& report,
                                            std::span<const std::pair<SurfacePoint, double>> probes);

enum class BoundCase { accumulation, conic, finite_w };

std::string to_string(BoundCase c);
BoundCase bound_case_from_string(const std::string& s);

/// Smallest constants with sum(b) <= K * sum(a) over tails (K1) and over
/// finite windows (K2, K3); p = b0/a0 when b0 > a0 for geometric sequences.
struct SequenceConstants {
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;
  std::optional<double> p;
  std::size_t n_F = 0;
};

SequenceConstants sequence_constants(const PairingScheme& scheme, std::size_t w);

struct BoundRow {
  SurfacePoint center;
  double r = 0.0;
  double area = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool ok = false;
};

struct BoundTable {
  BoundCase which = BoundCase::accumulation;
  SequenceConstants constants;
  double factor = 0.0;
  std::vector<BoundRow> rows;
  bool all_ok = true;
};

/// Checks 2r^2 <= area <= factor*r^2 (+1e-9) for every sample. The factor is
/// 2K'+7/2 (accumulation; 2p+7/2 when that is smaller), 10+4max(K'',K''')
/// (conic) or n_F+1 (finite W). Throws DomainError when the case does not
/// apply to W spec w.
BoundTable verify_paper_bounds(const PairingScheme& scheme, BoundCase which, std::size_t w,
                               std::span<const std::pair<SurfacePoint, double>> samples);

struct LipschitzReport {
  std::size_t containment_checks = 0;
  bool containment_ok = true;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
};

/// Compares max-metric and Euclidean balls (clipped to the polygon) at the
/// given centers and radii: B_euc(r) within B_max(r) within B_euc(sqrt2 r)
/// on random points, and area(B_max)/area(B_euc) for each ball.
LipschitzReport lipschitz_equivalence_check(const PairingScheme& scheme,
                                            std::span<const std::pair<SurfacePoint, double>> balls,
                                            std::size_t points_per_ball, std::uint64_t seed);

}  // namespace papersurf

#endif  // PAPERSURF_MEASURE_HPP_
