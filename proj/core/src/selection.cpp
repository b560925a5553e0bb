#include "adaptui/selection.hpp"
#include "adaptui/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace adaptui {

namespace {

auto normalized_objectives(ParetoFront const& front) -> std::vector<std::vector<double>>
{
    std::vector<std::vector<double>> out;
    out.reserve(front.size());
    for (auto const& c : front.members()) {
        std::vector<double> f(c.objectives.size());
        for (std::size_t m = 0; m < f.size(); ++m) {
            f[m] = (c.objectives[m] - front.ranges()[m].first) / front.span_or_unit(m);
        }
        out.push_back(std::move(f));
    }
    return out;
}

auto mu_of(std::span<std::vector<double> const> f, std::size_t i) -> double
{
    auto best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j == i) {
            continue;
        }
        double gain = 0.0;
        double loss = 0.0;
        for (std::size_t m = 0; m < f[i].size(); ++m) {
            gain += std::max(0.0, f[j][m] - f[i][m]);
            loss += std::max(0.0, f[i][m] - f[j][m]);
        }
        if (loss > 0.0) {
            best = std::min(best, gain / loss);
        }
    }
    return best;
}

} // namespace

auto tradeoff_mu(ParetoFront const& front, std::size_t i) -> TradeoffScore
{
    if (i >= front.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "front index " + std::to_string(i) + " out of range");
    }
    auto const f = normalized_objectives(front);
    return {i, mu_of(f, i)};
}

auto tradeoff_mu_all(ParetoFront const& front) -> std::vector<double>
{
    auto const f = normalized_objectives(front);
    std::vector<double> mu(front.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mu[i] = mu_of(f, i);
    }
    return mu;
}

auto reduce_front(ParetoFront const& front, std::size_t k) -> std::vector<ReducedCandidate>
{
    if (k == 0) {
        throw Error(ErrorCode::InvalidConfiguration, "reduction size must be positive", "reduction_k");
    }
    if (front.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot reduce an empty front");
    }
    auto const mu = tradeoff_mu_all(front);
    auto const lex_less = [&](std::size_t a, std::size_t b) {
        auto const& fa = front[a].objectives;
        auto const& fb = front[b].objectives;
        return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
    };
    auto const by_mu = [&](std::size_t a, std::size_t b) {
        if (mu[a] != mu[b]) {
            return mu[a] > mu[b];
        }
        return lex_less(a, b);
    };

    std::vector<std::size_t> extremes;
    for (std::size_t m = 0; m < front.objective_count(); ++m) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < front.size(); ++i) {
            auto const fi = front[i].objectives[m];
            auto const fb = front[best].objectives[m];
            if (fi < fb || (fi == fb && lex_less(i, best))) {
                best = i;
            }
        }
        if (std::find(extremes.begin(), extremes.end(), best) == extremes.end()) {
            extremes.push_back(best);
        }
    }

    std::vector<std::size_t> picked;
    if (k <= extremes.size()) {
        picked = extremes;
        std::stable_sort(picked.begin(), picked.end(), by_mu);
        picked.resize(k);
    } else {
        picked = extremes;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < front.size(); ++i) {
            if (std::find(extremes.begin(), extremes.end(), i) == extremes.end()) {
                rest.push_back(i);
            }
        }
        std::stable_sort(rest.begin(), rest.end(), by_mu);
        auto const fill = std::min(rest.size(), k - extremes.size());
        picked.insert(picked.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(fill));
    }

    std::vector<ReducedCandidate> out;
    out.reserve(picked.size());
    for (auto i : picked) {
        auto const extreme = std::find(extremes.begin(), extremes.end(), i) != extremes.end();
        out.push_back({i, mu[i], extreme});
    }
    return out;
}

auto auto_pick(std::span<ReducedCandidate const> reduced) -> std::size_t
{
    if (reduced.empty()) {
        throw Error(ErrorCode::EmptyInput, "no candidates to pick from");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < reduced.size(); ++i) {
        if (reduced[i].mu > reduced[best].mu) {
            best = i;
        }
    }
    return best;
}

auto induced_constraints(AdaptationProblem const& problem, ParetoFront const& front, Candidate const& selected,
                         double tau) -> std::vector<PreferenceConstraint>
{
    std::vector<PreferenceConstraint> out;
    auto const objectives = problem.objectives();
    for (std::size_t m = 0; m < objectives.size(); ++m) {
        auto const range = front.ranges()[m].second - front.ranges()[m].first;
        out.push_back({objectives[m], selected.objectives[m] + tau * range});
    }
    return out;
}

auto candidate_id(std::size_t round, std::size_t position) -> std::string
{
    return "r" + std::to_string(round) + "-c" + std::to_string(position);
}

void Session::validate() const
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(ErrorCode::Validation, "tau must be positive", "tau");
    }
    if (reduction_k == 0) {
        throw Error(ErrorCode::Validation, "reduction_k must be positive", "reduction_k");
    }
}

auto open_round(Session session, ParetoFront front) -> Session
{
    Round round;
    round.number = session.rounds.size() + 1;
    round.reduced = reduce_front(front, session.reduction_k);
    round.auto_pick = auto_pick(round.reduced);
    round.front = std::move(front);
    session.rounds.push_back(std::move(round));
    return session;
}

auto apply_selection(Session session, std::string_view id) -> Session
{
    if (session.rounds.empty()) {
        throw Error(ErrorCode::NoOpenRound, "no adaptation round to select from");
    }
    auto& round = session.rounds.back();
    std::optional<std::size_t> position;
    for (std::size_t i = 0; i < round.reduced.size(); ++i) {
        if (candidate_id(round.number, i) == id) {
            position = i;
            break;
        }
    }
    if (!position) {
        throw Error(ErrorCode::StaleSelection, "candidate '" + std::string(id) + "' is not part of the current round "
                                                   + std::to_string(round.number));
    }

    auto const& selected = round.front[round.reduced[*position].front_index];
    for (auto const& bound : induced_constraints(session.problem, round.front, selected, session.tau)) {
        auto const current = std::find_if(session.problem.constraints().begin(), session.problem.constraints().end(),
                                          [&](auto const& c) { return c.objective == bound.objective; });
        if (current == session.problem.constraints().end() || bound.upper_bound < current->upper_bound) {
            session.problem.set_constraint(bound);
        }
    }
    round.selection = position;
    return session;
}

} // namespace adaptui
