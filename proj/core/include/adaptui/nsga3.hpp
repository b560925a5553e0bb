#ifndef ADAPTUI_NSGA3_HPP
#define ADAPTUI_NSGA3_HPP

#include "adaptui/ergonomics.hpp"
#include "adaptui/parallel.hpp"
#include "adaptui/pareto.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>

namespace adaptui {

struct Nsga3Config {
    std::size_t population_size{100};
    std::size_t generations{200};
    /// Das-Dennis divisions; population_size - 1 for two objectives.
    std::size_t reference_divisions{99};
    double sbx_eta{30.0};
    double sbx_probability{1.0};
    double mutation_eta{20.0};
    /// Per coordinate; 1/3 mutates one of the three coordinates on average.
    double mutation_probability{1.0 / 3.0};
    std::uint64_t seed{42};

    /// Throws Error{InvalidConfiguration} naming the offending field.
    /// `objective_count` determines the reference-point count.
    void validate(std::size_t objective_count) const;

    friend auto operator==(Nsga3Config const&, Nsga3Config const&) -> bool = default;
};

struct GenerationProgress {
    std::size_t generation{};
    std::size_t generations{};
    /// Number of constrained-non-dominated members of the surviving population.
    std::size_t rank0_size{};
};

using ProgressCallback = std::function<void(GenerationProgress const&)>;

/// Reference-direction based many-objective GA. Returns the feasible rank-0
/// set of the final population as a filtered front. Deterministic for a
/// fixed seed and independent of `options.threads`.
///
/// Throws Error{InvalidConfiguration} for a bad config or a problem with
/// fewer than two objectives, Error{InfeasibleSearch} if the final
/// population holds no feasible member.
auto nsga3_run(AdaptationProblem const& problem, Nsga3Config const& config, ExecutionOptions const& options = {},
               ProgressCallback const& progress = {}) -> ParetoFront;

} // namespace adaptui

#endif
