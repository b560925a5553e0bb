#ifndef ADAPTUI_VARIATION_HPP
#define ADAPTUI_VARIATION_HPP

#include "adaptui/random.hpp"
#include "adaptui/vec3.hpp"

#include <utility>

namespace adaptui {

/// Simulated binary crossover. Each coordinate is recombined with
/// probability 1/2 using the spread factor of distribution index `eta`;
/// children are clamped to `bounds`. When the pair-level draw against
/// `probability` fails, the parents are returned unchanged.
///
/// Without clamping the children's mean equals the parents' mean per
/// coordinate.
auto sbx_crossover(Vec3 parent_a, Vec3 parent_b, double eta, double probability, Box const& bounds, Rng& rng)
    -> std::pair<Vec3, Vec3>;

/// Polynomial mutation: each coordinate mutates with `probability`, shifted
/// by delta * (upper - lower) where delta follows the symmetric polynomial
/// distribution of index `eta` on [-1, 1]; the result is clamped.
auto polynomial_mutation(Vec3 x, double eta, double probability, Box const& bounds, Rng& rng) -> Vec3;

} // namespace adaptui

#endif
