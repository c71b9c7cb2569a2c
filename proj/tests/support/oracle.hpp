#ifndef PAPERSURF_TESTS_ORACLE_HPP_
#define PAPERSURF_TESTS_ORACLE_HPP_

#include <functional>
#include <vector>

#include "papersurf/balls.hpp"
#include "papersurf/geometry.hpp"
#include "papersurf/scheme.hpp"

namespace oracle {

using papersurf::Point2;

// Shortest path with at most one bend, the bend restricted to a grid of
// spacing h over `box`. `inside` is a membership predicate for the region.
double one_bend_geodesic(const std::function<bool(Point2)>& inside, papersurf::Rect box, Point2 p, Point2 q,
                         double h);

// Ball preimage from quotient distances: boxes of radius r - D(v) at every
// chain-graph node v with D(v) < r, plus radius-r boxes at the center and
// the points identified with it. Independent of the closed-form decomposition.
std::vector<papersurf::BallPiece> distance_ball(const papersurf::PairingScheme& scheme, papersurf::SurfacePoint center,
                                               double r, double h);

// Area of A xor B for two piece sets, via 2|A u B| - |A| - |B|.
double symmetric_difference(const papersurf::PairingScheme& scheme, const std::vector<papersurf::BallPiece>& a,
                            const std::vector<papersurf::BallPiece>& b);

}  // namespace oracle

#endif  // PAPERSURF_TESTS_ORACLE_HPP_
