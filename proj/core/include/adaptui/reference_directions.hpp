#ifndef ADAPTUI_REFERENCE_DIRECTIONS_HPP
#define ADAPTUI_REFERENCE_DIRECTIONS_HPP

#include <cstddef>
#include <vector>

namespace adaptui {

/// Non-negative weight vectors on the unit simplex.
struct ReferenceDirectionSet {
    std::size_t dimension{};
    std::vector<std::vector<double>> directions;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return directions.size(); }
};

/// Das-Dennis simplex lattice: every vector with components in
/// {0, 1/p, ..., 1} summing to one, in lexicographic order.
/// Yields C(M + p - 1, p) directions.
auto das_dennis(std::size_t objective_count, std::size_t divisions) -> ReferenceDirectionSet;

/// C(M + p - 1, p) without enumerating.
auto das_dennis_count(std::size_t objective_count, std::size_t divisions) -> std::size_t;

} // namespace adaptui

#endif
