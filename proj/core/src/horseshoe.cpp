#include "papersurf/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "papersurf/error.hpp"

namespace papersurf {

PairingScheme build_tight_horseshoe(const HorseshoeSpec& spec) {
  if (spec.depth < 2) throw DomainError("horseshoe depth must be at least 2");
  if (std::abs(spec.a.term(0) - 0.5) > 1e-12) throw DomainError("horseshoe needs a_0 = 1/2");
  if (std::abs(spec.a.tail_sum(1) - 0.5) > 1e-9) throw DomainError("horseshoe needs a_1 + a_2 + ... = 1/2");
  const Polygon square = Polygon::create("P", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // The W layout puts its first term on the b side; a is the (empty) beta list.
  const auto w = [&](double start, bool reversed) {
    TypeWSpec t;
    t.polygon = 0;
    t.side_start = start;
    t.side_len = 2.0;
    t.a = SequenceSpec::list_of({});
    t.b = spec.a;
    t.depth = spec.depth;
    t.reversed = reversed;
    return t;
  };
  return PairingScheme(MultiPolygon({square}), {}, {w(2.0, false), w(0.0, true)});
}

PairingScheme build_tight_horseshoe(std::size_t depth) {
  HorseshoeSpec spec;
  spec.depth = depth;
  return build_tight_horseshoe(spec);
}

HorseshoeTable area_experiment(const PairingScheme& scheme, std::span<const int> ks) {
  if (ks.empty()) throw DomainError("no radii given");
  if (scheme.singular_points().empty()) throw DomainError("scheme has no singular class");
  HorseshoeTable t;
  t.center = scheme.surface_point(scheme.singular_points().front());
  std::vector<double> x, y;
  for (int k : ks) {
    if (k < 1) throw DomainError("radius exponent must be positive");
    const double r = std::ldexp(1.0, -k);
    const auto dec = decompose_ball(scheme, t.center, r);
    const double area = union_area(scheme, dec.pieces).value;
    if (dec.tail_area_bound > 0.01 * area) {
      throw NonConvergence(fmt::format("tail bound {:.3g} exceeds 1% of area {:.3g} at r = 2^-{}; increase depth",
                                       dec.tail_area_bound, area, k));
    }
    t.rows.push_back({k, r, area, area / (r * r), dec.tail_area_bound, dec.pieces.size()});
    x.push_back(k);
    y.push_back(area / (r * r));
  }
  if (t.rows.size() >= 2) t.fit = fit_line(x, y);
  return t;
}

HorseshoeTable horseshoe_area_experiment(std::size_t depth, std::span<const int> ks) {
  if (ks.empty()) throw DomainError("no radii given");
  const int kmax = *std::max_element(ks.begin(), ks.end());
  if (depth < static_cast<std::size_t>(std::max(kmax, 0)) + 2) throw DomainError("depth must be at least max k + 2");
  return area_experiment(build_tight_horseshoe(depth), ks);
}

HorseshoeTable horseshoe_area_experiment(std::size_t depth) {
  std::vector<int> ks(8);
  std::iota(ks.begin(), ks.end(), 3);
  return horseshoe_area_experiment(depth, ks);
}

std::string HorseshoeTable::csv() const {
  std::string out = "k,r,area,ratio,tail_bound,pieces\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", row.k, row.r, row.area, row.ratio, row.tail_bound,
                       row.pieces);
  }
  return out;
}

std::string HorseshoeTable::summary() const {
  return fmt::format("center ({:.6g}, {:.6g}): ratio = {:.6g} * k + {:.6g}, R^2 = {:.6f}\n", center.p.x, center.p.y,
                     fit.slope, fit.intercept, fit.r2);
}

}  // namespace papersurf
