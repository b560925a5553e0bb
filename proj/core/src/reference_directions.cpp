#include "adaptui/reference_directions.hpp"
#include "adaptui/error.hpp"

namespace adaptui {

namespace {

void enumerate(std::size_t dimension, std::size_t divisions, std::size_t remaining, std::vector<std::size_t>& prefix,
               std::vector<std::vector<double>>& out)
{
    if (prefix.size() + 1 == dimension) {
        std::vector<double> direction;
        direction.reserve(dimension);
        for (auto k : prefix) {
            direction.push_back(static_cast<double>(k) / static_cast<double>(divisions));
        }
        direction.push_back(static_cast<double>(remaining) / static_cast<double>(divisions));
        out.push_back(std::move(direction));
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        prefix.push_back(k);
        enumerate(dimension, divisions, remaining - k, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

auto das_dennis_count(std::size_t objective_count, std::size_t divisions) -> std::size_t
{
    // C(n, k) with n = M + p - 1, k = M - 1, built incrementally so every
    // intermediate value is an exact binomial coefficient.
    std::size_t result = 1;
    auto const n = objective_count + divisions - 1;
    for (std::size_t k = 1; k < objective_count; ++k) {
        result = result * (n - objective_count + 1 + k) / k;
    }
    return result;
}

auto das_dennis(std::size_t objective_count, std::size_t divisions) -> ReferenceDirectionSet
{
    if (objective_count < 2) {
        throw Error(ErrorCode::InvalidConfiguration, "reference directions need at least two objectives");
    }
    if (divisions < 1) {
        throw Error(ErrorCode::InvalidConfiguration, "reference directions need at least one division",
                    "reference_divisions");
    }
    ReferenceDirectionSet set;
    set.dimension = objective_count;
    set.directions.reserve(das_dennis_count(objective_count, divisions));
    std::vector<std::size_t> prefix;
    enumerate(objective_count, divisions, divisions, prefix, set.directions);
    return set;
}

} // namespace adaptui
