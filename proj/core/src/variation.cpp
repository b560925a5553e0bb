#include "adaptui/variation.hpp"

#include <cmath>

namespace adaptui {

namespace {

constexpr double kIdenticalGap = 1e-14;

auto spread_factor(double u, double eta) -> double
{
    auto const exponent = 1.0 / (eta + 1.0);
    if (u <= 0.5) {
        return std::pow(2.0 * u, exponent);
    }
    return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

} // namespace

auto sbx_crossover(Vec3 parent_a, Vec3 parent_b, double eta, double probability, Box const& bounds, Rng& rng)
    -> std::pair<Vec3, Vec3>
{
    if (uniform01(rng) >= probability) {
        return {parent_a, parent_b};
    }
    Vec3 child_a = parent_a;
    Vec3 child_b = parent_b;
    for (int i = 0; i < 3; ++i) {
        // Both draws are consumed on every coordinate so the stream position
        // does not depend on the parents' values.
        auto const coin = uniform01(rng);
        auto const u = uniform01(rng);
        if (coin >= 0.5 || std::abs(parent_a[i] - parent_b[i]) < kIdenticalGap) {
            continue;
        }
        auto const beta = spread_factor(u, eta);
        child_a[i] = 0.5 * ((1.0 + beta) * parent_a[i] + (1.0 - beta) * parent_b[i]);
        child_b[i] = 0.5 * ((1.0 - beta) * parent_a[i] + (1.0 + beta) * parent_b[i]);
    }
    return {bounds.clamp(child_a), bounds.clamp(child_b)};
}

auto polynomial_mutation(Vec3 x, double eta, double probability, Box const& bounds, Rng& rng) -> Vec3
{
    if (probability <= 0.0) {
        return x;
    }
    auto const exponent = 1.0 / (eta + 1.0);
    for (int i = 0; i < 3; ++i) {
        auto const draw = uniform01(rng);
        auto const u = uniform01(rng);
        if (draw >= probability) {
            continue;
        }
        auto const delta = u < 0.5 ? std::pow(2.0 * u, exponent) - 1.0 : 1.0 - std::pow(2.0 * (1.0 - u), exponent);
        x[i] += delta * bounds.extent(i);
    }
    return bounds.clamp(x);
}

} // namespace adaptui
