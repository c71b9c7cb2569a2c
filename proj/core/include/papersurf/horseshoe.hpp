#ifndef PAPERSURF_HORSESHOE_HPP_
#define PAPERSURF_HORSESHOE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "papersurf/measure.hpp"

namespace papersurf {

/// Fold lengths a_0 = 1/2, a_1, a_2, ... with a_1 + a_2 + ... = 1/2. The
/// folds run from (1,1) over the top and left sides and, mirrored, down the
/// right side and along the bottom; there are no beta segments.
struct HorseshoeSpec {
  std::size_t depth = 24;
  SequenceSpec a = SequenceSpec::geometric_of(0.5, 2.0);
};

PairingScheme build_tight_horseshoe(const HorseshoeSpec& spec);
PairingScheme build_tight_horseshoe(std::size_t depth);

struct HorseshoeRow {
  int k = 0;
  double r = 0.0;
  double area = 0.0;
  double ratio = 0.0;
  double tail_bound = 0.0;
  std::size_t pieces = 0;
};

struct HorseshoeTable {
  SurfacePoint center;
  std::vector<HorseshoeRow> rows;
  /// ratio against k = log2(1/r).
  LinearFit fit;

  [[nodiscard]] std::string csv() const;
  [[nodiscard]] std::string summary() const;
};

/// Areas of balls of radius 2^-k at the singular class of `scheme`. Refuses
/// (NonConvergence) when a tail bound exceeds 1% of the area.
HorseshoeTable area_experiment(const PairingScheme& scheme, std::span<const int> ks);

/// The experiment on build_tight_horseshoe(depth); requires depth >= max k + 2.
HorseshoeTable horseshoe_area_experiment(std::size_t depth, std::span<const int> ks);
HorseshoeTable horseshoe_area_experiment(std::size_t depth);

}  // namespace papersurf

#endif  // PAPERSURF_HORSESHOE_HPP_
