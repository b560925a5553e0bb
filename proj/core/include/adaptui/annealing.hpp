#ifndef ADAPTUI_ANNEALING_HPP
#define ADAPTUI_ANNEALING_HPP

#include "adaptui/ergonomics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace adaptui {

/// Geometric-cooling simulated annealing over element positions.
struct AnnealConfig {
    double initial_temperature{1.0};
    /// Multiplies the temperature once every `cooling_interval` iterations.
    double cooling_factor{0.95};
    std::size_t cooling_interval{100};
    std::size_t iterations{20000};
    /// Standard deviation of the Gaussian proposal, meters.
    double proposal_sigma{0.10};
    std::uint64_t seed{7};

    void validate() const;

    friend auto operator==(AnnealConfig const&, AnnealConfig const&) -> bool = default;
};

/// Static linear combination sum_m w_m f_m. Throws Error{InvalidConfiguration}
/// on length mismatch, negative weights, or all-zero weights.
auto weighted_sum_cost(std::span<double const> objectives, std::span<double const> weights) -> double;

/// Minimizes weighted_sum_cost over feasible placements. The walk starts from
/// the resting hand position perturbed by one proposal step (pulled back inside
/// reach if needed); infeasible proposals are rejected outright. Returns the
/// best feasible candidate seen.
auto anneal_weighted_sum(AdaptationProblem const& problem, std::span<double const> weights,
                         AnnealConfig const& config) -> Candidate;

} // namespace adaptui

#endif
