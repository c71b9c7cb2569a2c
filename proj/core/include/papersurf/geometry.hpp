#ifndef PAPERSURF_GEOMETRY_HPP_
#define PAPERSURF_GEOMETRY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "papersurf/error.hpp"

namespace papersurf {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

/// The two planar metrics used throughout. Ball analysis defaults to `max`.
enum class Metric { euclidean, max };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& name);

double distance(Point2 p, Point2 q, Metric m);

/// Length of a polyline; 0 for a single point.
double path_length(std::span<const Point2> polyline, Metric m);

/// Distance on the metric cone over a circle. `t`, `s` are radial
/// coordinates and `angle` the distance between the two directions.
double cone_distance(double t, double s, double angle);

/// Axis-aligned rectangle, closed.
struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  [[nodiscard]] bool empty() const { return !(xmax > xmin && ymax > ymin); }
  [[nodiscard]] double area() const { return empty() ? 0.0 : (xmax - xmin) * (ymax - ymin); }
  [[nodiscard]] bool contains(Point2 p, double tol = 0.0) const {
    return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol && p.y <= ymax + tol;
  }
  [[nodiscard]] Rect intersect(const Rect& o) const;
};

/// Distance from a point to a segment in the given metric.
double point_segment_distance(Point2 p, Point2 a, Point2 b, Metric m);

/// Distance between two closed segments in the given metric.
double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1, Metric m);

/// Simple polygon with counterclockwise vertices and an arc-length
/// parametrization of its boundary starting at vertex 0.
class Polygon {
 public:
  /// Validates and normalizes orientation. Clockwise input is reversed and
  /// `was_reversed()` reports it so the caller can warn.
  static Polygon create(std::string id, std::vector<Point2> vertices);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const std::vector<Point2>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] double perimeter() const { return perimeter_; }
  [[nodiscard]] double area() const { return area_; }
  [[nodiscard]] bool was_reversed() const { return reversed_; }
  [[nodiscard]] bool is_convex() const { return convex_; }
  /// All sides horizontal or vertical.
  [[nodiscard]] bool is_rectilinear() const { return rectilinear_; }
  [[nodiscard]] Rect bounds() const { return bounds_; }

  /// Arc-length coordinate of vertex i.
  [[nodiscard]] double vertex_coordinate(std::size_t i) const { return cumulative_[i]; }
  [[nodiscard]] Point2 edge_start(std::size_t i) const { return vertices_[i]; }
  [[nodiscard]] Point2 edge_end(std::size_t i) const { return vertices_[(i + 1) % size()]; }
  [[nodiscard]] double edge_length(std::size_t i) const { return cumulative_[i + 1] - cumulative_[i]; }

  /// Wraps s into [0, perimeter).
  [[nodiscard]] double normalize(double s) const;
  /// Boundary point at arc length s (taken modulo the perimeter).
  [[nodiscard]] Point2 point_at(double s) const;
  /// Index of the edge containing arc length s; vertices belong to the edge they start.
  [[nodiscard]] std::size_t edge_at(double s) const;
  /// Unit tangent of edge i in the direction of positive orientation.
  [[nodiscard]] Point2 edge_direction(std::size_t i) const;
  /// Inward unit normal of edge i.
  [[nodiscard]] Point2 inward_normal(std::size_t i) const;
  /// Interior angle at vertex i, in radians.
  [[nodiscard]] double interior_angle(std::size_t i) const;
  /// Index of the vertex sitting at coordinate s, if any.
  [[nodiscard]] std::optional<std::size_t> vertex_at(double s, double tol = 1e-11) const;
  /// Interior angle at a boundary coordinate: pi away from vertices.
  [[nodiscard]] double angle_at(double s, double tol = 1e-11) const;

  /// Even-odd test; points within `tol` of the boundary count as inside.
  [[nodiscard]] bool contains(Point2 p, double tol = 1e-12) const;
  /// Arc-length coordinate of p if it lies on the boundary within tol.
  [[nodiscard]] std::optional<double> project_to_boundary(Point2 p, double tol = 1e-9) const;
  /// True if the closed segment pq stays inside the polygon.
  [[nodiscard]] bool sees(Point2 p, Point2 q) const;
  [[nodiscard]] bool is_reflex(std::size_t i) const;

  /// Decomposition of a rectilinear polygon into interior-disjoint
  /// axis-aligned rectangles (vertical slabs). Empty for other polygons.
  [[nodiscard]] const std::vector<Rect>& rectangles() const { return slabs_; }

 private:
  Polygon() = default;

  std::string id_;
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
  double perimeter_ = 0.0;
  double area_ = 0.0;
  bool reversed_ = false;
  bool convex_ = false;
  bool rectilinear_ = false;
  Rect bounds_{};
  std::vector<Rect> slabs_;
};

/// Length of the shortest path from p to q inside `poly`, measured in `m`.
/// Paths are straight between reflex vertices of the polygon.
double intrinsic_distance(const Polygon& poly, Point2 p, Point2 q, Metric m);

/// A disjoint union of polygons.
class MultiPolygon {
 public:
  MultiPolygon() = default;
  explicit MultiPolygon(std::vector<Polygon> polygons);

  [[nodiscard]] const std::vector<Polygon>& polygons() const { return polygons_; }
  [[nodiscard]] const Polygon& operator[](std::size_t i) const { return polygons_.at(i); }
  [[nodiscard]] std::size_t size() const { return polygons_.size(); }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& id) const;
  /// First polygon containing p (boundary included).
  [[nodiscard]] std::optional<std::size_t> locate(Point2 p) const;

  [[nodiscard]] double diameter(Metric m) const;
  /// Smallest distance between two non-adjacent sides, over all polygons.
  [[nodiscard]] double min_nonadjacent_distance(Metric m) const;
  [[nodiscard]] double total_area() const;
  [[nodiscard]] double total_perimeter() const;
  [[nodiscard]] std::size_t side_count() const;

 private:
  std::vector<Polygon> polygons_;
};

}  // namespace papersurf

#endif  // PAPERSURF_GEOMETRY_HPP_
