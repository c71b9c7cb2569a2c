#include "papersurf/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <utility>

namespace papersurf {

namespace {

constexpr double kSumTol = 1e-9;

// Offset of s past `start` along the boundary, with s slightly before start
// snapped to 0.
double cyclic_offset(double s, double start, double perimeter) {
  double d = std::fmod(s - start, perimeter);
  if (d < 0.0) d += perimeter;
  if (d > perimeter - kCoordTol) d = 0.0;
  return d;
}

bool cyclic_equal(double x, double y, double perimeter, double tol) {
  double d = std::fmod(std::abs(x - y), perimeter);
  return d <= tol || perimeter - d <= tol;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

SequenceSpec SequenceSpec::list_of(std::vector<double> v) {
  SequenceSpec s;
  s.kind = Kind::list;
  s.values = std::move(v);
  return s;
}

SequenceSpec SequenceSpec::geometric_of(double first, double ratio) {
  SequenceSpec s;
  s.kind = Kind::geometric;
  s.first = first;
  s.ratio = ratio;
  return s;
}

bool SequenceSpec::all_zero() const {
  if (kind == Kind::geometric) return first == 0.0;
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::size_t SequenceSpec::count() const {
  if (kind == Kind::list) return values.size();
  return first == 0.0 ? 0 : std::numeric_limits<std::size_t>::max();
}

double SequenceSpec::term(std::size_t i) const {
  if (kind == Kind::list) return i < values.size() ? values[i] : 0.0;
  return first * std::pow(ratio, -static_cast<double>(i));
}

double SequenceSpec::sum() const { return tail_sum(0); }

double SequenceSpec::tail_sum(std::size_t n) const {
  if (kind == Kind::list) {
    double s = 0.0;
    for (std::size_t i = n; i < values.size(); ++i) s += values[i];
    return s;
  }
  return term(n) * ratio / (ratio - 1.0);
}

WExpansion expand_type_w(const Polygon& poly, const TypeWSpec& spec) {
  const double s0 = spec.side_start;
  const double ell = spec.side_len;
  if (!(ell > 0.0) || ell > poly.perimeter() + kCoordTol) {
    throw DomainError("W spec: side length " + fmt(ell) + " out of range for polygon '" + poly.id() + "'");
  }
  for (const SequenceSpec* q : {&spec.a, &spec.b}) {
    if (q->kind == SequenceSpec::Kind::geometric) {
      if (!(q->ratio > 1.0)) throw DomainError("W spec: geometric ratio must exceed 1");
      if (q->first < 0.0) throw DomainError("W spec: negative geometric first term");
    } else if (std::any_of(q->values.begin(), q->values.end(), [](double v) { return !(v >= 0.0); })) {
      throw DomainError("W spec: sequence terms must be non-negative");
    }
  }
  const bool inf_a = spec.a.infinite();
  const bool inf_b = spec.b.infinite();
  if ((inf_a && !inf_b && !spec.b.all_zero()) || (inf_b && !inf_a && !spec.a.all_zero())) {
    throw DomainError("W spec: an infinite sequence can only be combined with an identically zero one");
  }
  WExpansion out;
  out.infinite = inf_a || inf_b;
  if (out.infinite && spec.depth < 1) throw DomainError("W spec: depth must be at least 1");
  const double total = spec.a.sum() + spec.b.sum();
  if (std::abs(total - 0.5 * ell) > kSumTol) {
    throw DomainError("W spec: sum a + sum b = " + fmt(total) + " but half the side length is " + fmt(0.5 * ell));
  }
  out.terms = out.infinite ? spec.depth : std::max(spec.a.count(), spec.b.count());

  double A = s0;
  double c = s0 + ell;
  std::vector<SegmentPairing> raw;
  std::vector<double> conic;
  for (std::size_t i = 0; i < out.terms; ++i) {
    const double ai = spec.a.term(i);
    const double bi = spec.b.term(i);
    const double c_next = c - ai;
    if (A + ai + 2.0 * bi > c_next + kSumTol) {
      throw DomainError("W spec: term " + std::to_string(i) + " runs past the end of the side");
    }
    if (ai > 0.0) raw.push_back({spec.polygon, A, spec.polygon, c_next, ai});
    if (bi > 0.0) raw.push_back({spec.polygon, A + ai, spec.polygon, A + ai + bi, bi});
    A += ai + 2.0 * bi;
    c = c_next;
    conic.push_back(c);
  }
  double tail_lo = A;
  double tail_len = std::max(0.0, c - A);
  double acc = s0 + ell - spec.a.sum();
  std::array<double, 2> frontier{A, c};

  if (spec.reversed) {
    const auto m = [&](double x) { return 2.0 * s0 + ell - x; };
    for (auto& p : raw) p = {p.a_polygon, m(p.a_start + p.len), p.b_polygon, m(p.b_start + p.len), p.len};
    for (auto& x : conic) x = m(x);
    tail_lo = m(tail_lo + tail_len);
    acc = m(acc);
    frontier = {m(frontier[0]), m(frontier[1])};
  }
  for (auto& p : raw) {
    p.a_start = poly.normalize(p.a_start);
    p.b_start = poly.normalize(p.b_start);
  }
  for (auto& x : conic) x = poly.normalize(x);
  out.pairings = std::move(raw);
  out.conic_points = std::move(conic);
  out.tail_lo = poly.normalize(tail_lo);
  out.tail_length = out.infinite ? tail_len : 0.0;
  out.accumulation = poly.normalize(acc);
  out.frontier = {poly.normalize(frontier[0]), poly.normalize(frontier[1])};
  return out;
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::planar: return "planar";
    case PointKind::regular_vertex: return "regular-vertex";
    case PointKind::singular_accumulation: return "singular-accumulation";
    case PointKind::singular_infinite_vertex: return "singular-infinite-vertex";
  }
  return "unknown";
}

bool pairs_linked(double p1, double q1, double p2, double q2, double perimeter, double tol) {
  for (double x : {p1, q1}) {
    for (double y : {p2, q2}) {
      if (cyclic_equal(x, y, perimeter, tol)) return false;
    }
  }
  if (cyclic_equal(p1, q1, perimeter, tol) || cyclic_equal(p2, q2, perimeter, tol)) return false;
  const double u = cyclic_offset(q1, p1, perimeter);
  const double x = cyclic_offset(p2, p1, perimeter);
  const double y = cyclic_offset(q2, p1, perimeter);
  return (x < u) != (y < u);
}

PairingScheme::PairingScheme(MultiPolygon domain, std::vector<SegmentPairing> basic, std::vector<TypeWSpec> w_specs)
    : domain_(std::move(domain)), basic_(std::move(basic)), w_specs_(std::move(w_specs)) {
  build(false);
}

PairingScheme::PairingScheme(MultiPolygon domain, std::vector<SegmentPairing> basic, std::vector<TypeWSpec> w_specs,
                             ProbeTag)
    : domain_(std::move(domain)), basic_(std::move(basic)), w_specs_(std::move(w_specs)) {
  build(true);
}

void PairingScheme::build(bool probe) {
  if (domain_.size() == 0) throw DomainError("scheme has no polygons");
  for (auto& e : basic_) {
    if (e.a_polygon >= domain_.size() || e.b_polygon >= domain_.size()) {
      throw DomainError("pairing refers to an unknown polygon");
    }
    if (!(e.len > 0.0)) throw DomainError("pairing length must be positive");
    e.a_start = domain_[e.a_polygon].normalize(e.a_start);
    e.b_start = domain_[e.b_polygon].normalize(e.b_start);
  }
  expanded_ = basic_;
  for (const auto& w : w_specs_) {
    if (w.polygon >= domain_.size()) throw DomainError("W spec refers to an unknown polygon");
    expansions_.push_back(expand_type_w(domain_[w.polygon], w));
    const auto& ex = expansions_.back();
    expanded_.insert(expanded_.end(), ex.pairings.begin(), ex.pairings.end());
    if (ex.infinite) singular_points_.push_back({w.polygon, ex.accumulation});
  }
  validate_disjoint();
  if (probe) return;

  // Frontier points whose class keeps growing with depth belong to an
  // infinite class; the corresponding accumulation point joins that class.
  std::vector<std::pair<BoundaryPoint, BoundaryPoint>> growing;  // (frontier, accumulation)
  bool any_infinite = std::any_of(expansions_.begin(), expansions_.end(), [](const auto& e) { return e.infinite; });
  if (any_infinite) {
    auto deeper = w_specs_;
    for (auto& w : deeper) w.depth += 2;
    const PairingScheme probe_scheme(domain_, basic_, deeper, ProbeTag{});
    for (std::size_t w = 0; w < expansions_.size(); ++w) {
      const auto& ex = expansions_[w];
      if (!ex.infinite) continue;
      for (double f : ex.frontier) {
        const BoundaryPoint fp{w_specs_[w].polygon, f};
        bool cap = false;
        const auto here = closure(fp, &cap);
        const auto there = probe_scheme.closure(fp, &cap);
        if (there.size() > here.size()) growing.push_back({fp, {w_specs_[w].polygon, ex.accumulation}});
      }
    }
  }

  std::vector<BoundaryPoint> seeds;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    for (std::size_t v = 0; v < domain_[i].size(); ++v) seeds.push_back({i, domain_[i].vertex_coordinate(v)});
  }
  for (const auto& e : expanded_) {
    seeds.push_back({e.a_polygon, e.a_start});
    seeds.push_back({e.a_polygon, e.a_start + e.len});
    seeds.push_back({e.b_polygon, e.b_start});
    seeds.push_back({e.b_polygon, e.b_start + e.len});
  }
  for (std::size_t w = 0; w < expansions_.size(); ++w) {
    if (!expansions_[w].infinite) continue;
    for (double f : expansions_[w].frontier) seeds.push_back({w_specs_[w].polygon, f});
  }

  special_index_.assign(domain_.size(), {});
  const auto find_existing = [&](BoundaryPoint p) -> bool {
    for (const auto& cls : special_classes_) {
      for (const auto& m : cls.members) {
        if (same_point(m, p)) return true;
      }
    }
    return false;
  };
  const auto is_accumulation = [&](BoundaryPoint p) {
    return std::any_of(singular_points_.begin(), singular_points_.end(),
                       [&](const BoundaryPoint& a) { return same_point(a, p); });
  };
  for (auto p : seeds) {
    p = normalize(p);
    if (is_accumulation(p) || find_existing(p)) continue;
    bool capped = false;
    auto members = closure(p, &capped);
    bool infinite = capped;
    for (const auto& [f, acc] : growing) {
      if (std::any_of(members.begin(), members.end(), [&](const BoundaryPoint& m) { return same_point(m, f); })) {
        infinite = true;
        if (std::none_of(members.begin(), members.end(), [&](const BoundaryPoint& m) { return same_point(m, acc); })) {
          members.push_back(normalize(acc));
        }
      }
    }
    special_classes_.push_back(make_class(std::move(members), infinite, false));
  }
  for (const auto& acc : singular_points_) {
    if (find_existing(acc)) continue;
    special_classes_.push_back(make_class({normalize(acc)}, false, true));
  }
  for (std::size_t c = 0; c < special_classes_.size(); ++c) {
    for (const auto& m : special_classes_[c].members) special_index_[m.polygon].push_back({m.s, c});
  }
  for (auto& idx : special_index_) std::sort(idx.begin(), idx.end());
}

void PairingScheme::validate_disjoint() const {
  struct Interval {
    double start, len;
    std::size_t owner;
  };
  std::vector<std::vector<Interval>> per(domain_.size());
  const auto add = [&](std::size_t poly, double start, double len, std::size_t owner) {
    const double P = domain_[poly].perimeter();
    start = domain_[poly].normalize(start);
    if (len > P + kCoordTol) throw DomainError("segment longer than the boundary of '" + domain_[poly].id() + "'");
    if (start + len > P) {
      per[poly].push_back({start, P - start, owner});
      per[poly].push_back({0.0, start + len - P, owner});
    } else {
      per[poly].push_back({start, len, owner});
    }
  };
  for (std::size_t k = 0; k < expanded_.size(); ++k) {
    add(expanded_[k].a_polygon, expanded_[k].a_start, expanded_[k].len, k);
    add(expanded_[k].b_polygon, expanded_[k].b_start, expanded_[k].len, k);
  }
  for (std::size_t w = 0; w < expansions_.size(); ++w) {
    if (expansions_[w].tail_length > 0.0) {
      add(w_specs_[w].polygon, expansions_[w].tail_lo, expansions_[w].tail_length, expanded_.size() + w);
    }
  }
  for (std::size_t poly = 0; poly < per.size(); ++poly) {
    auto& v = per[poly];
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.start < y.start; });
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].start < v[i - 1].start + v[i - 1].len - kSumTol) {
        throw DomainError("pairings overlap on polygon '" + domain_[poly].id() + "' near s = " + fmt(v[i].start));
      }
    }
  }
}

BoundaryPoint PairingScheme::normalize(BoundaryPoint p) const {
  if (p.polygon >= domain_.size()) throw DomainError("boundary point on unknown polygon");
  const double P = domain_[p.polygon].perimeter();
  double s = domain_[p.polygon].normalize(p.s);
  if (P - s <= kCoordTol) s = 0.0;
  return {p.polygon, s};
}

bool PairingScheme::same_point(BoundaryPoint p, BoundaryPoint q, double tol) const {
  return p.polygon == q.polygon && cyclic_equal(p.s, q.s, domain_[p.polygon].perimeter(), tol);
}

Point2 PairingScheme::position(BoundaryPoint p) const { return domain_[p.polygon].point_at(p.s); }

SurfacePoint PairingScheme::surface_point(BoundaryPoint p) const { return {p.polygon, position(p)}; }

std::optional<BoundaryPoint> PairingScheme::boundary_point(SurfacePoint p, double tol) const {
  if (p.polygon >= domain_.size()) return std::nullopt;
  if (auto s = domain_[p.polygon].project_to_boundary(p.p, tol)) return normalize({p.polygon, *s});
  return std::nullopt;
}

std::vector<BoundaryPoint> PairingScheme::partners(BoundaryPoint p) const {
  p = normalize(p);
  std::vector<BoundaryPoint> out;
  const auto push = [&](BoundaryPoint q) {
    q = normalize(q);
    if (same_point(q, p)) return;
    for (const auto& r : out) {
      if (same_point(r, q)) return;
    }
    out.push_back(q);
  };
  for (const auto& e : expanded_) {
    if (p.polygon == e.a_polygon) {
      const double off = cyclic_offset(p.s, e.a_start, domain_[e.a_polygon].perimeter());
      if (off <= e.len + kCoordTol) push({e.b_polygon, e.b_start + e.len - std::min(off, e.len)});
    }
    if (p.polygon == e.b_polygon) {
      const double off = cyclic_offset(p.s, e.b_start, domain_[e.b_polygon].perimeter());
      if (off <= e.len + kCoordTol) push({e.a_polygon, e.a_start + e.len - std::min(off, e.len)});
    }
  }
  return out;
}

std::vector<BoundaryPoint> PairingScheme::closure(BoundaryPoint p, bool* capped) const {
  std::vector<BoundaryPoint> members{normalize(p)};
  const std::size_t cap = 10 * expanded_.size() + 10;
  *capped = false;
  for (std::size_t head = 0; head < members.size(); ++head) {
    if (head >= cap) {
      *capped = true;
      break;
    }
    for (const auto& q : partners(members[head])) {
      bool seen = false;
      for (const auto& m : members) {
        if (same_point(m, q)) {
          seen = true;
          break;
        }
      }
      if (!seen) members.push_back(q);
    }
  }
  return members;
}

PointClass PairingScheme::make_class(std::vector<BoundaryPoint> members, bool infinite, bool accumulation) const {
  PointClass c;
  c.representative = members.front();
  c.members = std::move(members);
  c.infinite = infinite;
  c.valence = c.members.size();
  if (!accumulation) {
    for (const auto& m : c.members) {
      for (const auto& acc : singular_points_) {
        if (same_point(m, acc)) accumulation = true;
      }
    }
  }
  if (infinite) {
    c.kind = PointKind::singular_infinite_vertex;
    return c;
  }
  if (accumulation) {
    c.kind = PointKind::singular_accumulation;
    return c;
  }
  bool any_vertex = false;
  double angle = 0.0;
  for (const auto& m : c.members) {
    const auto& poly = domain_[m.polygon];
    if (poly.vertex_at(m.s)) any_vertex = true;
    angle += poly.angle_at(m.s);
  }
  c.kind = (c.members.size() == 2 && !any_vertex) ? PointKind::planar : PointKind::regular_vertex;
  c.cone_angle = angle;
  return c;
}

std::optional<std::size_t> PairingScheme::special_class_of(BoundaryPoint p) const {
  p = normalize(p);
  if (special_index_.empty()) return std::nullopt;
  const auto& idx = special_index_[p.polygon];
  const double P = domain_[p.polygon].perimeter();
  auto it = std::lower_bound(idx.begin(), idx.end(), std::make_pair(p.s - kCoordTol, std::size_t{0}));
  if (it != idx.end() && it->first <= p.s + kCoordTol) return it->second;
  if (p.s > P - kCoordTol && !idx.empty() && idx.front().first <= kCoordTol) return idx.front().second;
  if (p.s < kCoordTol && !idx.empty() && idx.back().first >= P - kCoordTol) return idx.back().second;
  return std::nullopt;
}

std::vector<BoundaryPoint> PairingScheme::identify(BoundaryPoint p) const {
  if (auto c = special_class_of(p)) return special_classes_[*c].members;
  bool capped = false;
  return closure(p, &capped);
}

PointClass PairingScheme::classify(BoundaryPoint p) const {
  if (auto c = special_class_of(p)) {
    PointClass out = special_classes_[*c];
    out.representative = normalize(p);
    return out;
  }
  bool capped = false;
  return make_class(closure(p, &capped), capped, false);
}

FullnessReport PairingScheme::check_full() const {
  FullnessReport r;
  for (const auto& e : basic_) r.total_pairing_len += e.len;
  for (const auto& w : w_specs_) r.total_pairing_len += w.a.sum() + w.b.sum();
  r.boundary_len = domain_.total_perimeter();
  r.ok = std::abs(r.total_pairing_len - 0.5 * r.boundary_len) <= kSumTol;
  return r;
}

LinkReport PairingScheme::check_unlinked(bool merge) const {
  LinkReport rep;
  const auto full = check_full();
  if (!full.ok) {
    rep.reason = "not full (covered " + fmt(full.total_pairing_len) + " of " + fmt(0.5 * full.boundary_len) + ")";
    return rep;
  }
  const std::size_t n = domain_.size();
  if (n > 1 && !merge) {
    rep.reason = "multipolygon domain; merge along inter-polygon pairings first";
    return rep;
  }

  // Map boundary points to one cyclic coordinate.
  struct Piece {
    std::size_t poly;
    double start, len, m_start;
  };
  std::vector<Piece> pieces;
  std::vector<char> is_seam(expanded_.size(), 0);
  double merged_perimeter = domain_[0].perimeter();
  if (n > 1) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    std::size_t seams = 0;
    struct SeamSide {
      double start, len;
      std::size_t partner;
      double entry;
    };
    std::vector<std::vector<SeamSide>> sides(n);
    for (std::size_t k = 0; k < expanded_.size(); ++k) {
      const auto& e = expanded_[k];
      if (e.a_polygon == e.b_polygon) continue;
      is_seam[k] = 1;
      ++seams;
      const std::size_t ra = root(e.a_polygon), rb = root(e.b_polygon);
      if (ra == rb) {
        rep.reason = "inter-polygon pairings contain a cycle; no merge rule";
        return rep;
      }
      parent[ra] = rb;
      sides[e.a_polygon].push_back({e.a_start, e.len, e.b_polygon, e.b_start + e.len});
      sides[e.b_polygon].push_back({e.b_start, e.len, e.a_polygon, e.a_start + e.len});
    }
    if (seams != n - 1) {
      rep.reason = "inter-polygon pairings do not connect all polygons";
      return rep;
    }
    double m = 0.0;
    std::function<void(std::size_t, double, double, std::size_t)> walk = [&](std::size_t P, double from, double length,
                                                                              std::size_t depth) {
      if (depth > n) throw DomainError("merge walk did not terminate");
      const double per = domain_[P].perimeter();
      double x = 0.0;
      while (true) {
        const SeamSide* next = nullptr;
        double best = length - kCoordTol;
        for (const auto& sd : sides[P]) {
          const double off = cyclic_offset(sd.start, from, per);
          if (off >= x - kCoordTol && off < best) {
            best = off;
            next = &sd;
          }
        }
        if (!next) break;
        if (best > x) pieces.push_back({P, domain_[P].normalize(from + x), best - x, m});
        m += std::max(0.0, best - x);
        const double qper = domain_[next->partner].perimeter();
        walk(next->partner, next->entry, qper - next->len, depth + 1);
        x = best + next->len;
      }
      if (length > x) pieces.push_back({P, domain_[P].normalize(from + x), length - x, m});
      m += std::max(0.0, length - x);
    };
    double from = 0.0;
    for (const auto& sd : sides[0]) {
      const double off = cyclic_offset(from, sd.start, domain_[0].perimeter());
      if (off > kCoordTol && off < sd.len - kCoordTol) from = sd.start + sd.len;
    }
    walk(0, from, domain_[0].perimeter(), 0);
    merged_perimeter = m;
  } else {
    pieces.push_back({0, 0.0, domain_[0].perimeter(), 0.0});
  }
  const auto to_merged = [&](BoundaryPoint p) -> double {
    p = normalize(p);
    for (const auto& pc : pieces) {
      if (pc.poly != p.polygon) continue;
      const double off = cyclic_offset(p.s, pc.start, domain_[pc.poly].perimeter());
      if (off <= pc.len + kCoordTol) return pc.m_start + std::min(off, pc.len);
    }
    throw DomainError("merge map misses a boundary point");
  };

  struct PairSample {
    double p, q;
    BoundaryPoint bp, bq;
    std::size_t owner;
  };
  std::vector<PairSample> samples;
  for (std::size_t k = 0; k < expanded_.size(); ++k) {
    if (is_seam[k]) continue;
    const auto& e = expanded_[k];
    const std::array<std::pair<double, double>, 3> offs{{{0.5 * e.len, 0.5 * e.len}, {0.0, e.len}, {e.len, 0.0}}};
    for (const auto& [ta, tb] : offs) {
      const BoundaryPoint pa{e.a_polygon, e.a_start + ta};
      const BoundaryPoint pb{e.b_polygon, e.b_start + tb};
      if (same_point(normalize(pa), normalize(pb))) continue;
      samples.push_back({to_merged(pa), to_merged(pb), normalize(pa), normalize(pb), k});
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].owner == samples[j].owner) continue;
      if (pairs_linked(samples[i].p, samples[i].q, samples[j].p, samples[j].q, merged_perimeter)) {
        rep.plain = false;
        rep.reason = "linked";
        rep.witness = std::array<BoundaryPoint, 4>{samples[i].bp, samples[i].bq, samples[j].bp, samples[j].bq};
        return rep;
      }
    }
  }
  rep.plain = true;
  return rep;
}

PairingScheme PairingScheme::split_pairing(std::size_t k, double t) const {
  if (k >= basic_.size()) throw DomainError("split_pairing: no basic pairing " + std::to_string(k));
  const auto e = basic_[k];
  if (!(t > kCoordTol && t < e.len - kCoordTol)) {
    throw DomainError("split_pairing: offset " + fmt(t) + " is not strictly inside (0, " + fmt(e.len) + ")");
  }
  auto basic = basic_;
  basic[k] = {e.a_polygon, e.a_start, e.b_polygon, e.b_start + e.len - t, t};
  basic.insert(basic.begin() + static_cast<std::ptrdiff_t>(k) + 1,
               SegmentPairing{e.a_polygon, e.a_start + t, e.b_polygon, e.b_start, e.len - t});
  return PairingScheme(domain_, std::move(basic), w_specs_);
}

double PairingScheme::shortest_pairing() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : basic_) best = std::min(best, e.len);
  for (const auto& w : w_specs_) {
    for (const SequenceSpec* q : {&w.a, &w.b}) {
      if (q->kind == SequenceSpec::Kind::geometric) {
        if (q->first > 0.0) best = std::min(best, q->first);
      } else {
        for (double v : q->values) {
          if (v > 0.0) best = std::min(best, v);
        }
      }
    }
  }
  return best;
}

}  // namespace papersurf
