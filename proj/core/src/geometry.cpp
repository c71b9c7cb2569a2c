#include "papersurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>

namespace papersurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm2(Point2 a) { return std::hypot(a.x, a.y); }

int orient(Point2 a, Point2 b, Point2 c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(Point2 p, Point2 a, Point2 b, double eps) {
  return std::min(a.x, b.x) - eps <= p.x && p.x <= std::max(a.x, b.x) + eps &&
         std::min(a.y, b.y) - eps <= p.y && p.y <= std::max(a.y, b.y) + eps;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  constexpr double eps = 1e-14;
  const int o1 = orient(a, b, c, eps);
  const int o2 = orient(a, b, d, eps);
  const int o3 = orient(c, d, a, eps);
  const int o4 = orient(c, d, b, eps);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b, eps)) return true;
  if (o2 == 0 && on_segment(d, a, b, eps)) return true;
  if (o3 == 0 && on_segment(a, c, d, eps)) return true;
  if (o4 == 0 && on_segment(b, c, d, eps)) return true;
  return false;
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

// Vertical slab decomposition of a rectilinear polygon.
std::vector<Rect> slab_decomposition(const std::vector<Point2>& v) {
  std::vector<double> xs;
  for (const auto& p : v) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rect> out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double xm = 0.5 * (xs[k] + xs[k + 1]);
    std::vector<double> ys;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 a = v[i];
      const Point2 b = v[(i + 1) % v.size()];
      if (a.y != b.y) continue;
      if (std::min(a.x, b.x) < xm && xm < std::max(a.x, b.x)) ys.push_back(a.y);
    }
    std::sort(ys.begin(), ys.end());
    for (std::size_t j = 0; j + 1 < ys.size(); j += 2) {
      out.push_back({xs[k], ys[j], xs[k + 1], ys[j + 1]});
    }
  }
  return out;
}

}  // namespace

std::string to_string(Metric m) { return m == Metric::euclidean ? "euclidean" : "max"; }

Metric metric_from_string(const std::string& name) {
  if (name == "euclidean" || name == "l2") return Metric::euclidean;
  if (name == "max" || name == "linf") return Metric::max;
  throw DomainError("unknown metric '" + name + "'");
}

double distance(Point2 p, Point2 q, Metric m) {
  const double dx = std::abs(p.x - q.x);
  const double dy = std::abs(p.y - q.y);
  return m == Metric::euclidean ? std::hypot(dx, dy) : std::max(dx, dy);
}

double path_length(std::span<const Point2> polyline, Metric m) {
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) total += distance(polyline[i - 1], polyline[i], m);
  return total;
}

double cone_distance(double t, double s, double angle) {
  if (angle >= std::numbers::pi) return t + s;
  return std::sqrt(std::max(0.0, t * t + s * s - 2.0 * t * s * std::cos(angle)));
}

Rect Rect::intersect(const Rect& o) const {
  return {std::max(xmin, o.xmin), std::max(ymin, o.ymin), std::min(xmax, o.xmax), std::min(ymax, o.ymax)};
}

double point_segment_distance(Point2 p, Point2 a, Point2 b, Metric m) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a, m);
  if (m == Metric::euclidean) {
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + t * d, m);
  }
  // max(|dx(t)|, |dy(t)|) is convex and piecewise linear; its minimum sits at
  // an endpoint or where |dx| = |dy|.
  const Point2 w = a - p;
  double best = std::min(distance(p, a, m), distance(p, b, m));
  const double cands[] = {
      (d.x - d.y) != 0.0 ? -(w.x - w.y) / (d.x - d.y) : -1.0,
      (d.x + d.y) != 0.0 ? -(w.x + w.y) / (d.x + d.y) : -1.0,
      d.x != 0.0 ? -w.x / d.x : -1.0,
      d.y != 0.0 ? -w.y / d.y : -1.0,
  };
  for (double t : cands) {
    if (t > 0.0 && t < 1.0) best = std::min(best, distance(p, a + t * d, m));
  }
  return best;
}

double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1, Metric m) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  // The difference set is a parallelogram; its closest point to the origin
  // lies on an edge, which fixes one of the two parameters at an endpoint.
  return std::min({point_segment_distance(a0, b0, b1, m), point_segment_distance(a1, b0, b1, m),
                   point_segment_distance(b0, a0, a1, m), point_segment_distance(b1, a0, a1, m)});
}

Polygon Polygon::create(std::string id, std::vector<Point2> vertices) {
  if (vertices.size() < 3) throw DomainError("polygon '" + id + "' needs at least 3 vertices");
  for (const auto& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("polygon '" + id + "' has a non-finite vertex");
  }
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i] == vertices[(i + 1) % n]) throw DomainError("polygon '" + id + "' has a zero-length side");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n])) {
        throw DomainError("polygon '" + id + "' is not simple: sides " + std::to_string(i) + " and " +
                          std::to_string(j) + " meet");
      }
    }
  }
  Polygon poly;
  poly.id_ = std::move(id);
  double area = signed_area(vertices);
  if (area == 0.0) throw DomainError("polygon '" + poly.id_ + "' has zero area");
  if (area < 0.0) {
    std::reverse(vertices.begin() + 1, vertices.end());
    area = -area;
    poly.reversed_ = true;
  }
  poly.vertices_ = std::move(vertices);
  poly.area_ = area;
  poly.cumulative_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    poly.cumulative_[i + 1] = poly.cumulative_[i] + norm2(poly.vertices_[(i + 1) % n] - poly.vertices_[i]);
  }
  poly.perimeter_ = poly.cumulative_[n];

  poly.convex_ = true;
  poly.rectilinear_ = true;
  poly.bounds_ = {kInf, kInf, -kInf, -kInf};
  for (std::size_t i = 0; i < n; ++i) {
    if (poly.is_reflex(i)) poly.convex_ = false;
    const Point2 a = poly.vertices_[i];
    const Point2 b = poly.vertices_[(i + 1) % n];
    if (a.x != b.x && a.y != b.y) poly.rectilinear_ = false;
    poly.bounds_.xmin = std::min(poly.bounds_.xmin, a.x);
    poly.bounds_.ymin = std::min(poly.bounds_.ymin, a.y);
    poly.bounds_.xmax = std::max(poly.bounds_.xmax, a.x);
    poly.bounds_.ymax = std::max(poly.bounds_.ymax, a.y);
  }
  if (poly.rectilinear_) poly.slabs_ = slab_decomposition(poly.vertices_);
  return poly;
}

double Polygon::normalize(double s) const {
  double r = std::fmod(s, perimeter_);
  if (r < 0.0) r += perimeter_;
  if (r >= perimeter_) r = 0.0;
  return r;
}

std::size_t Polygon::edge_at(double s) const {
  s = normalize(s);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, size() - 1);
}

Point2 Polygon::point_at(double s) const {
  s = normalize(s);
  const std::size_t i = edge_at(s);
  const double len = edge_length(i);
  const double t = len > 0.0 ? (s - cumulative_[i]) / len : 0.0;
  const Point2 a = edge_start(i);
  return a + t * (edge_end(i) - a);
}

Point2 Polygon::edge_direction(std::size_t i) const {
  const Point2 d = edge_end(i) - edge_start(i);
  const double l = norm2(d);
  return {d.x / l, d.y / l};
}

Point2 Polygon::inward_normal(std::size_t i) const {
  const Point2 d = edge_direction(i);
  return {-d.y, d.x};
}

double Polygon::interior_angle(std::size_t i) const {
  const std::size_t n = size();
  const Point2 u = vertices_[i] - vertices_[(i + n - 1) % n];
  const Point2 w = vertices_[(i + 1) % n] - vertices_[i];
  return std::numbers::pi - std::atan2(cross(u, w), dot(u, w));
}

bool Polygon::is_reflex(std::size_t i) const { return interior_angle(i) > std::numbers::pi + 1e-12; }

std::optional<std::size_t> Polygon::vertex_at(double s, double tol) const {
  s = normalize(s);
  if (s <= tol || perimeter_ - s <= tol) return 0;
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), s - tol);
  if (it != cumulative_.end() && std::abs(*it - s) <= tol) {
    const auto i = static_cast<std::size_t>(it - cumulative_.begin());
    return i == size() ? 0 : i;
  }
  return std::nullopt;
}

double Polygon::angle_at(double s, double tol) const {
  if (auto v = vertex_at(s, tol)) return interior_angle(*v);
  return std::numbers::pi;
}

bool Polygon::contains(Point2 p, double tol) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n], Metric::euclidean) <= tol) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

std::optional<double> Polygon::project_to_boundary(Point2 p, double tol) const {
  std::optional<double> best;
  double best_d = tol;
  for (std::size_t i = 0; i < size(); ++i) {
    const Point2 a = edge_start(i);
    const Point2 d = edge_end(i) - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    const double dist = norm2(p - (a + t * d));
    if (dist <= best_d) {
      best_d = dist;
      best = normalize(cumulative_[i] + t * edge_length(i));
    }
  }
  return best;
}

bool Polygon::sees(Point2 p, Point2 q) const {
  // Split pq at every contact with the boundary and test each piece's midpoint.
  std::vector<double> ts{0.0, 1.0};
  const Point2 d = q - p;
  const double dd = dot(d, d);
  if (dd == 0.0) return contains(p, 1e-9);
  for (std::size_t i = 0; i < size(); ++i) {
    const Point2 a = edge_start(i);
    const Point2 b = edge_end(i);
    const Point2 e = b - a;
    const double den = cross(d, e);
    if (std::abs(den) > 1e-15) {
      const double t = cross(a - p, e) / den;
      const double u = cross(a - p, d) / den;
      if (t > 0.0 && t < 1.0 && u >= -1e-12 && u <= 1.0 + 1e-12) ts.push_back(t);
    }
    for (Point2 v : {a, b}) {
      const double t = dot(v - p, d) / dd;
      if (t > 0.0 && t < 1.0 && norm2(p + t * d - v) < 1e-12) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] < 1e-14) continue;
    const double tm = 0.5 * (ts[k] + ts[k + 1]);
    if (!contains(p + tm * d, 1e-9)) return false;
  }
  return true;
}

double intrinsic_distance(const Polygon& poly, Point2 p, Point2 q, Metric m) {
  if (!poly.contains(p, 1e-9) || !poly.contains(q, 1e-9)) {
    throw DomainError("intrinsic_distance: point outside polygon '" + poly.id() + "'");
  }
  if (poly.is_convex() || poly.sees(p, q)) return distance(p, q, m);

  std::vector<Point2> nodes{p, q};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly.is_reflex(i)) nodes.push_back(poly.vertices()[i]);
  }
  const std::size_t n = nodes.size();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[0] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == n || dist[u] == kInf) break;
    if (u == 1) break;
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !poly.sees(nodes[u], nodes[v])) continue;
      dist[v] = std::min(dist[v], dist[u] + distance(nodes[u], nodes[v], m));
    }
  }
  return dist[1];
}

MultiPolygon::MultiPolygon(std::vector<Polygon> polygons) : polygons_(std::move(polygons)) {
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    for (std::size_t j = i + 1; j < polygons_.size(); ++j) {
      if (polygons_[i].id() == polygons_[j].id()) throw DomainError("duplicate polygon id '" + polygons_[i].id() + "'");
      const auto& A = polygons_[i];
      const auto& B = polygons_[j];
      for (std::size_t a = 0; a < A.size(); ++a) {
        for (std::size_t b = 0; b < B.size(); ++b) {
          if (segments_intersect(A.edge_start(a), A.edge_end(a), B.edge_start(b), B.edge_end(b))) {
            throw DomainError("polygons '" + A.id() + "' and '" + B.id() + "' are not disjoint");
          }
        }
      }
      if (A.contains(B.vertices()[0], 0.0) || B.contains(A.vertices()[0], 0.0)) {
        throw DomainError("polygons '" + A.id() + "' and '" + B.id() + "' are nested");
      }
    }
  }
}

std::optional<std::size_t> MultiPolygon::find(const std::string& id) const {
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    if (polygons_[i].id() == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> MultiPolygon::locate(Point2 p) const {
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    if (polygons_[i].contains(p, 1e-9)) return i;
  }
  return std::nullopt;
}

double MultiPolygon::diameter(Metric m) const {
  double d = 0.0;
  for (const auto& A : polygons_) {
    for (const auto& B : polygons_) {
      for (const auto& p : A.vertices()) {
        for (const auto& q : B.vertices()) d = std::max(d, distance(p, q, m));
      }
    }
  }
  return d;
}

double MultiPolygon::min_nonadjacent_distance(Metric m) const {
  double best = kInf;
  for (const auto& P : polygons_) {
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        best = std::min(best, segment_distance(P.edge_start(i), P.edge_end(i), P.edge_start(j), P.edge_end(j), m));
      }
    }
    if (n == 3) {
      for (std::size_t i = 0; i < 3; ++i) {
        best = std::min(best, point_segment_distance(P.vertices()[(i + 2) % 3], P.edge_start(i), P.edge_end(i), m));
      }
    }
  }
  return best;
}

double MultiPolygon::total_area() const {
  double s = 0.0;
  for (const auto& p : polygons_) s += p.area();
  return s;
}

double MultiPolygon::total_perimeter() const {
  double s = 0.0;
  for (const auto& p : polygons_) s += p.perimeter();
  return s;
}

std::size_t MultiPolygon::side_count() const {
  std::size_t s = 0;
  for (const auto& p : polygons_) s += p.size();
  return s;
}

}  // namespace papersurf
