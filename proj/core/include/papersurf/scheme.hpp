#ifndef PAPERSURF_SCHEME_HPP_
#define PAPERSURF_SCHEME_HPP_

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "papersurf/geometry.hpp"

namespace papersurf {

/// Coordinates closer than this (in arc length) name the same boundary point.
inline constexpr double kCoordTol = 1e-11;

/// A point on the boundary of polygon `polygon` at arc length `s`.
struct BoundaryPoint {
  std::size_t polygon = 0;
  double s = 0.0;
};

/// A point of the closed multipolygon, given by its polygon and position.
struct SurfacePoint {
  std::size_t polygon = 0;
  Point2 p;
};

/// Identifies a_start + t with b_start + (len - t) for t in [0, len].
struct SegmentPairing {
  std::size_t a_polygon = 0;
  double a_start = 0.0;
  std::size_t b_polygon = 0;
  double b_start = 0.0;
  double len = 0.0;
};

/// Either an explicit finite list or a geometric sequence first * ratio^-i.
struct SequenceSpec {
  enum class Kind { list, geometric };
  Kind kind = Kind::list;
  std::vector<double> values;
  double first = 0.0;
  double ratio = 2.0;

  static SequenceSpec list_of(std::vector<double> v);
  static SequenceSpec geometric_of(double first, double ratio);

  [[nodiscard]] bool infinite() const { return kind == Kind::geometric && first != 0.0; }
  [[nodiscard]] bool all_zero() const;
  /// Number of terms; max() for infinite sequences.
  [[nodiscard]] std::size_t count() const;
  /// Term i; 0 past the end of a list.
  [[nodiscard]] double term(std::size_t i) const;
  [[nodiscard]] double sum() const;
  /// Sum of terms with index >= n, in closed form for geometric sequences.
  [[nodiscard]] double tail_sum(std::size_t n) const;
};

/// Alternating alpha/beta identification of a boundary arc of length
/// side_len starting at side_start. `reversed` mirrors the layout so that it
/// runs from the far end of the arc.
struct TypeWSpec {
  std::size_t polygon = 0;
  double side_start = 0.0;
  double side_len = 0.0;
  SequenceSpec a;
  SequenceSpec b;
  std::size_t depth = 24;
  bool reversed = false;
};

/// Concrete pairings of a W spec up to its depth, plus the bookkeeping the
/// ball and distance code needs about the unexpanded part.
struct WExpansion {
  std::vector<SegmentPairing> pairings;
  std::size_t terms = 0;
  bool infinite = false;
  /// Normalized coordinate of the accumulation point (infinite specs only).
  double accumulation = 0.0;
  /// Unexpanded interval [tail_lo, tail_lo + tail_length]; tail_lo normalized.
  double tail_lo = 0.0;
  double tail_length = 0.0;
  /// Frontier coordinates of the tail (both ends), normalized.
  std::array<double, 2> frontier{};
  /// Far-end junction coordinates c_1..c_terms (c_i ends alpha_{i-1}'), normalized.
  std::vector<double> conic_points;
};

/// Expands a W spec on `poly`. Throws DomainError on an invalid spec.
WExpansion expand_type_w(const Polygon& poly, const TypeWSpec& spec);

enum class PointKind { planar, regular_vertex, singular_accumulation, singular_infinite_vertex };

std::string to_string(PointKind k);

struct PointClass {
  BoundaryPoint representative;
  std::vector<BoundaryPoint> members;
  PointKind kind = PointKind::planar;
  /// Number of preimages (members) for non-singular classes.
  std::size_t valence = 0;
  std::optional<double> cone_angle;
  /// The class continues past the truncation depth.
  bool infinite = false;

  [[nodiscard]] bool singular() const {
    return kind == PointKind::singular_accumulation || kind == PointKind::singular_infinite_vertex;
  }
};

struct FullnessReport {
  double total_pairing_len = 0.0;
  double boundary_len = 0.0;
  bool ok = false;
};

struct LinkReport {
  bool plain = false;
  std::string reason;
  /// Two point pairs (four boundary points) that alternate, when linked.
  std::optional<std::array<BoundaryPoint, 4>> witness;
};

/// A multipolygon with a collection of basic pairings and W generators.
class PairingScheme {
 public:
  PairingScheme(MultiPolygon domain, std::vector<SegmentPairing> basic, std::vector<TypeWSpec> w_specs);

  [[nodiscard]] const MultiPolygon& domain() const { return domain_; }
  [[nodiscard]] const Polygon& polygon(std::size_t i) const { return domain_[i]; }
  [[nodiscard]] const std::vector<SegmentPairing>& basic() const { return basic_; }
  [[nodiscard]] const std::vector<TypeWSpec>& w_specs() const { return w_specs_; }
  [[nodiscard]] const std::vector<WExpansion>& expansions() const { return expansions_; }
  /// Basic pairings followed by all expanded W pairings.
  [[nodiscard]] const std::vector<SegmentPairing>& expanded() const { return expanded_; }
  /// Accumulation points of infinite W specs.
  [[nodiscard]] const std::vector<BoundaryPoint>& singular_points() const { return singular_points_; }

  [[nodiscard]] BoundaryPoint normalize(BoundaryPoint p) const;
  [[nodiscard]] bool same_point(BoundaryPoint p, BoundaryPoint q, double tol = kCoordTol) const;
  [[nodiscard]] Point2 position(BoundaryPoint p) const;
  [[nodiscard]] SurfacePoint surface_point(BoundaryPoint p) const;
  /// Boundary coordinate of a surface point lying on the boundary.
  [[nodiscard]] std::optional<BoundaryPoint> boundary_point(SurfacePoint p, double tol = 1e-9) const;

  /// Points directly paired with p by a single pairing (p itself excluded).
  [[nodiscard]] std::vector<BoundaryPoint> partners(BoundaryPoint p) const;
  /// Full equivalence class of p (p included).
  [[nodiscard]] std::vector<BoundaryPoint> identify(BoundaryPoint p) const;
  [[nodiscard]] PointClass classify(BoundaryPoint p) const;

  /// Classes of all vertices, pairing endpoints and accumulation points.
  [[nodiscard]] const std::vector<PointClass>& special_classes() const { return special_classes_; }
  /// Index into special_classes() when p is one of their members.
  [[nodiscard]] std::optional<std::size_t> special_class_of(BoundaryPoint p) const;

  [[nodiscard]] FullnessReport check_full() const;
  /// Plainness test. With `merge`, a multipolygon is first glued along its
  /// inter-polygon pairings into one effective polygon; those pairings must
  /// form a spanning tree of the polygons.
  [[nodiscard]] LinkReport check_unlinked(bool merge = false) const;

  /// Replaces basic pairing k by two pairings split at offset t in (0, len).
  [[nodiscard]] PairingScheme split_pairing(std::size_t k, double t) const;

  /// Shortest basic pairing or first nonzero W term.
  [[nodiscard]] double shortest_pairing() const;

 private:
  struct ProbeTag {};
  PairingScheme(MultiPolygon domain, std::vector<SegmentPairing> basic, std::vector<TypeWSpec> w_specs, ProbeTag);

  void build(bool probe);
  void validate_disjoint() const;
  [[nodiscard]] std::vector<BoundaryPoint> closure(BoundaryPoint p, bool* capped) const;
  [[nodiscard]] PointClass make_class(std::vector<BoundaryPoint> members, bool infinite, bool accumulation) const;

  MultiPolygon domain_;
  std::vector<SegmentPairing> basic_;
  std::vector<TypeWSpec> w_specs_;
  std::vector<WExpansion> expansions_;
  std::vector<SegmentPairing> expanded_;
  std::vector<BoundaryPoint> singular_points_;
  std::vector<PointClass> special_classes_;
  /// Per polygon: sorted (coordinate, class index) pairs.
  std::vector<std::vector<std::pair<double, std::size_t>>> special_index_;
};

/// Linking test for two point pairs on a circle of the given perimeter.
/// Shared points count as unlinked.
bool pairs_linked(double p1, double q1, double p2, double q2, double perimeter, double tol = kCoordTol);

}  // namespace papersurf

#endif  // PAPERSURF_SCHEME_HPP_
