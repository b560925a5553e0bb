#ifndef ADAPTUI_PARETO_HPP
#define ADAPTUI_PARETO_HPP

#include "adaptui/ergonomics.hpp"
#include "adaptui/parallel.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace adaptui {

/// Objective vectors closer than this (per component) are the same point.
inline constexpr double kDuplicateTolerance = 1e-9;

/// Constrained domination (minimization): a feasible candidate beats an
/// infeasible one, of two infeasible candidates the smaller total violation
/// wins, and two feasible candidates compare by Pareto dominance.
///
/// Throws Error{IncompatibleCandidates} on objective-count mismatch.
auto dominates(Candidate const& a, Candidate const& b) -> bool;

/// Plain Pareto dominance on objective vectors, ignoring feasibility.
auto pareto_dominates(std::span<double const> a, std::span<double const> b) noexcept -> bool;

struct RankedPopulation {
    /// fronts[0] is the non-dominated set; indices are input positions.
    std::vector<std::vector<std::size_t>> fronts;
};

/// Fast non-dominated sort. Indices inside each front are ascending.
/// Throws Error{EmptyInput} on an empty population.
auto non_dominated_sort(std::span<Candidate const> population) -> RankedPopulation;

/// A set of mutually non-dominated candidates with per-objective (min, max)
/// ranges. Fronts built by pareto_filter are in lexicographic objective order.
class ParetoFront {
public:
    ParetoFront() = default;
    explicit ParetoFront(std::vector<Candidate> members);

    [[nodiscard]] auto members() const noexcept -> std::span<Candidate const> { return members_; }
    [[nodiscard]] auto operator[](std::size_t i) const -> Candidate const& { return members_[i]; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return members_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return members_.empty(); }
    [[nodiscard]] auto objective_count() const noexcept -> std::size_t { return ranges_.size(); }

    /// (min, max) per objective.
    [[nodiscard]] auto ranges() const noexcept -> std::span<std::pair<double, double> const> { return ranges_; }

    /// max - min for objective m, or 1 when the objective is constant.
    [[nodiscard]] auto span_or_unit(std::size_t m) const -> double;

    /// Member with the smallest value of objective m (first in order on ties).
    [[nodiscard]] auto minimizer(std::size_t m) const -> std::size_t;

    friend auto operator==(ParetoFront const&, ParetoFront const&) -> bool = default;

private:
    std::vector<Candidate> members_;
    std::vector<std::pair<double, double>> ranges_;
};

/// Rank-0 members of `population`, de-duplicated by objective vector within
/// kDuplicateTolerance (the earliest input wins).
auto pareto_filter(std::span<Candidate const> population) -> ParetoFront;

/// Exhaustive validation front: evaluates a resolution^3 grid over the
/// decision box, drops infeasible points and filters the rest.
auto brute_force_front(AdaptationProblem const& problem, int resolution, ExecutionOptions const& options = {})
    -> ParetoFront;

/// Feasible grid candidates used by brute_force_front, in grid order.
auto feasible_grid(AdaptationProblem const& problem, int resolution, ExecutionOptions const& options = {})
    -> std::vector<Candidate>;

/// Inverted generational distance: mean over reference members of the
/// distance to the nearest approximation member, in objective space scaled
/// by the reference ranges.
auto igd(ParetoFront const& approximation, ParetoFront const& reference) -> double;

} // namespace adaptui

#endif
