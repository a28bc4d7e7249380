#pragma once

#include <span>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/legendre.hpp"

namespace combopt {

// Bregman projection onto the hull: argmin_{x in Conv(A)} D_F(x, w) for an
// interior w. Sets whose hull is a box plus disjoint sum blocks (plus at
// most one two-interval segment) are solved exactly by per-block scalar
// bisection on the dual multiplier; the rest fall back to cyclic Bregman
// projections with Dykstra corrections.
std::vector<double> bregman_project(const LegendreFunction& F,
                                    std::span<const double> w,
                                    const ActionSet& set);

// Same projection addressed by the dual point g = gradF(w), i.e.
// argmin_{x in Conv(A)} F(x) - g.x. The mirror-descent player feeds
// gradF(x) - eta * estimate here directly: composing in the dual chart
// avoids the primal exp-underflow that a very large step would hit when w
// itself is materialized.
std::vector<double> bregman_project_dual(const LegendreFunction& F,
                                         std::span<const double> g,
                                         const ActionSet& set);

// argmin_{x in Conv(A)} F(x); the starting point of the mirror-descent
// player. Solved through the same machinery with a zero dual offset, which
// is legitimate because every hull here lies in {sum x = m} where linear
// offsets along the all-ones direction are constant.
std::vector<double> legendre_minimizer(const LegendreFunction& F,
                                       const ActionSet& set);

}  // namespace combopt
