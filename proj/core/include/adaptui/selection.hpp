#ifndef ADAPTUI_SELECTION_HPP
#define ADAPTUI_SELECTION_HPP

#include "adaptui/ergonomics.hpp"
#include "adaptui/nsga3.hpp"
#include "adaptui/pareto.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adaptui {

/// Five visible options: the main panel plus four alternatives.
inline constexpr std::size_t kDefaultReductionSize = 5;

/// Preference constraints allow this fraction of the front range beyond the
/// selected value.
inline constexpr double kDefaultTau = 0.2;

struct TradeoffScore {
    std::size_t index{};
    /// Smallest gain/loss ratio against any other member; +inf for a
    /// single-member front.
    double mu{};
};

/// Trade-off score of member i on range-normalized objectives:
///
///   mu(i) = min_{j != i} sum_m max(0, f_m(j) - f_m(i)) / sum_m max(0, f_m(i) - f_m(j))
///
/// Pairs with a zero denominator (j weakly worse everywhere) are skipped.
/// High values mark knees, where leaving i costs much more than it gains.
/// Throws Error{IndexOutOfRange}.
auto tradeoff_mu(ParetoFront const& front, std::size_t i) -> TradeoffScore;

/// mu for every member, in front order.
auto tradeoff_mu_all(ParetoFront const& front) -> std::vector<double>;

struct ReducedCandidate {
    std::size_t front_index{};
    double mu{};
    /// True for per-objective minimizers, false for knees.
    bool is_extreme{};

    friend auto operator==(ReducedCandidate const&, ReducedCandidate const&) -> bool = default;
};

/// Picks min(k, |front|) qualitatively different members: the per-objective
/// minimizers first (in objective order), then the remaining members by
/// descending mu. When k is smaller than the number of extremes, the extremes
/// with the largest mu are kept. Ties break on the lexicographic objective
/// vector. Throws Error{InvalidConfiguration} for k == 0 and
/// Error{EmptyInput} for an empty front.
auto reduce_front(ParetoFront const& front, std::size_t k) -> std::vector<ReducedCandidate>;

/// Position (in `reduced`) of the highest-mu candidate, first on ties.
auto auto_pick(std::span<ReducedCandidate const> reduced) -> std::size_t;

/// Upper bound f_m(selected) + tau * range_m for every objective m.
auto induced_constraints(AdaptationProblem const& problem, ParetoFront const& front, Candidate const& selected,
                         double tau) -> std::vector<PreferenceConstraint>;

struct Round {
    /// 1-based.
    std::size_t number{};
    ParetoFront front;
    std::vector<ReducedCandidate> reduced;
    std::size_t auto_pick{};
    /// Position in `reduced` of the user's choice.
    std::optional<std::size_t> selection;

    friend auto operator==(Round const&, Round const&) -> bool = default;
};

/// "r<round>-c<position>": unique within and across rounds of a session.
auto candidate_id(std::size_t round, std::size_t position) -> std::string;

/// State of one elicitation loop. The problem's preference constraints are
/// the accumulated constraints.
struct Session {
    std::string id;
    AdaptationProblem problem;
    Nsga3Config nsga3;
    std::size_t reduction_k{kDefaultReductionSize};
    double tau{kDefaultTau};
    std::vector<Round> rounds;

    [[nodiscard]] auto pose() const -> UserPose const& { return problem.pose(); }
    [[nodiscard]] auto constraints() const -> std::span<PreferenceConstraint const> { return problem.constraints(); }

    /// Throws Error{Validation} for tau <= 0 or reduction_k == 0.
    void validate() const;

    friend auto operator==(Session const&, Session const&) -> bool = default;
};

/// Reduces `front` and appends it as the next round.
auto open_round(Session session, ParetoFront front) -> Session;

/// Folds the selection of `id` from the latest round into the session's
/// constraints, keeping the tighter bound per objective, and records it.
///
/// Throws Error{NoOpenRound} if no round exists and Error{StaleSelection}
/// if `id` is not a candidate of the latest round.
auto apply_selection(Session session, std::string_view id) -> Session;

} // namespace adaptui

#endif
