#include "adaptui/pareto.hpp"
#include "adaptui/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace adaptui {

namespace {

void require_same_dimension(Candidate const& a, Candidate const& b)
{
    if (a.objectives.size() != b.objectives.size()) {
        throw Error(ErrorCode::IncompatibleCandidates, "candidates have different objective counts");
    }
}

auto lexicographic_less(Candidate const& a, Candidate const& b) -> bool
{
    return std::lexicographical_compare(a.objectives.begin(), a.objectives.end(), b.objectives.begin(),
                                        b.objectives.end());
}

auto near_duplicate(Candidate const& a, Candidate const& b) -> bool
{
    for (std::size_t m = 0; m < a.objectives.size(); ++m) {
        if (std::abs(a.objectives[m] - b.objectives[m]) > kDuplicateTolerance) {
            return false;
        }
    }
    return true;
}

auto weakly_dominates(std::span<double const> a, std::span<double const> b) noexcept -> bool
{
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] > b[m]) {
            return false;
        }
    }
    return true;
}

} // namespace

auto pareto_dominates(std::span<double const> a, std::span<double const> b) noexcept -> bool
{
    bool strictly_better = false;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] > b[m]) {
            return false;
        }
        strictly_better = strictly_better || a[m] < b[m];
    }
    return strictly_better;
}

auto dominates(Candidate const& a, Candidate const& b) -> bool
{
    require_same_dimension(a, b);
    auto const va = a.total_violation();
    auto const vb = b.total_violation();
    if (va <= 0.0 && vb > 0.0) {
        return true;
    }
    if (va > 0.0) {
        return vb > 0.0 && va < vb;
    }
    return pareto_dominates(a.objectives, b.objectives);
}

auto non_dominated_sort(std::span<Candidate const> population) -> RankedPopulation
{
    if (population.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot sort an empty population");
    }
    auto const n = population.size();
    for (auto const& c : population) {
        require_same_dimension(population.front(), c);
    }

    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    RankedPopulation ranked;
    ranked.fronts.emplace_back();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(population[i], population[j])) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(population[j], population[i])) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) {
            ranked.fronts.front().push_back(i);
        }
    }

    while (true) {
        std::vector<std::size_t> next;
        for (auto i : ranked.fronts.back()) {
            for (auto j : dominated_by[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        if (next.empty()) {
            break;
        }
        std::sort(next.begin(), next.end());
        ranked.fronts.push_back(std::move(next));
    }
    return ranked;
}

ParetoFront::ParetoFront(std::vector<Candidate> members)
    : members_(std::move(members))
{
    if (members_.empty()) {
        return;
    }
    auto const m_count = members_.front().objectives.size();
    ranges_.assign(m_count, {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
    for (auto const& c : members_) {
        require_same_dimension(members_.front(), c);
        for (std::size_t m = 0; m < m_count; ++m) {
            ranges_[m].first = std::min(ranges_[m].first, c.objectives[m]);
            ranges_[m].second = std::max(ranges_[m].second, c.objectives[m]);
        }
    }
}

auto ParetoFront::span_or_unit(std::size_t m) const -> double
{
    auto const width = ranges_.at(m).second - ranges_.at(m).first;
    return width > 0.0 ? width : 1.0;
}

auto ParetoFront::minimizer(std::size_t m) const -> std::size_t
{
    if (members_.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty front has no minimizer");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < members_.size(); ++i) {
        if (members_[i].objectives.at(m) < members_[best].objectives.at(m)) {
            best = i;
        }
    }
    return best;
}

auto pareto_filter(std::span<Candidate const> population) -> ParetoFront
{
    if (population.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot filter an empty population");
    }
    for (auto const& c : population) {
        require_same_dimension(population.front(), c);
    }

    std::vector<std::size_t> feasible;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].feasible()) {
            feasible.push_back(i);
        }
    }

    std::vector<std::size_t> rank0;
    if (feasible.empty()) {
        // Infeasible candidates only compare by violation.
        auto least = std::numeric_limits<double>::infinity();
        for (auto const& c : population) {
            least = std::min(least, c.total_violation());
        }
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (population[i].total_violation() == least) {
                rank0.push_back(i);
            }
        }
        std::stable_sort(rank0.begin(), rank0.end(),
                         [&](auto a, auto b) { return lexicographic_less(population[a], population[b]); });
    } else {
        // After a lexicographic sort nothing can be dominated by a later
        // element, so one pass against the kept set suffices. Recent members
        // are checked first since they dominate most of what follows.
        std::stable_sort(feasible.begin(), feasible.end(),
                         [&](auto a, auto b) { return lexicographic_less(population[a], population[b]); });
        for (auto i : feasible) {
            auto const& f = population[i].objectives;
            bool covered = false;
            for (auto it = rank0.rbegin(); it != rank0.rend(); ++it) {
                if (weakly_dominates(population[*it].objectives, f)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                rank0.push_back(i);
            }
        }
    }

    std::vector<Candidate> members;
    members.reserve(rank0.size());
    std::vector<std::size_t> kept_inputs;
    for (auto i : rank0) {
        bool duplicate = false;
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (near_duplicate(members[k], population[i])) {
                // Earliest input wins among near-duplicates.
                if (i < kept_inputs[k]) {
                    members[k] = population[i];
                    kept_inputs[k] = i;
                }
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            members.push_back(population[i]);
            kept_inputs.push_back(i);
        }
    }
    return ParetoFront(std::move(members));
}

auto feasible_grid(AdaptationProblem const& problem, int resolution, ExecutionOptions const& options)
    -> std::vector<Candidate>
{
    if (resolution < 2) {
        throw Error(ErrorCode::InvalidConfiguration, "oracle resolution must be at least 2", "oracle_resolution");
    }
    auto const r = static_cast<std::size_t>(resolution);
    auto const& box = problem.bounds();
    auto const coordinate = [&](int axis, std::size_t i) {
        if (i + 1 == r) {
            return box.upper[axis];
        }
        return box.lower[axis] + box.extent(axis) * static_cast<double>(i) / static_cast<double>(r - 1);
    };

    // One slab of the grid per x index keeps the output order fixed
    // regardless of how slabs are scheduled.
    std::vector<std::vector<Candidate>> slabs(r);
    parallel_for(r, options, [&](std::size_t ix) {
        auto& slab = slabs[ix];
        for (std::size_t iy = 0; iy < r; ++iy) {
            for (std::size_t iz = 0; iz < r; ++iz) {
                auto const p = Vec3{coordinate(0, ix), coordinate(1, iy), coordinate(2, iz)};
                if (reach_violation(problem.pose(), p) > 0.0) {
                    continue;
                }
                auto c = evaluate(problem, p);
                if (c.feasible()) {
                    slab.push_back(std::move(c));
                }
            }
        }
    });

    std::vector<Candidate> grid;
    for (auto& slab : slabs) {
        std::move(slab.begin(), slab.end(), std::back_inserter(grid));
    }
    return grid;
}

auto brute_force_front(AdaptationProblem const& problem, int resolution, ExecutionOptions const& options)
    -> ParetoFront
{
    auto const grid = feasible_grid(problem, resolution, options);
    if (grid.empty()) {
        return {};
    }
    return pareto_filter(grid);
}

auto igd(ParetoFront const& approximation, ParetoFront const& reference) -> double
{
    if (approximation.empty() || reference.empty()) {
        throw Error(ErrorCode::EmptyInput, "IGD needs two non-empty fronts");
    }
    if (approximation.objective_count() != reference.objective_count()) {
        throw Error(ErrorCode::IncompatibleCandidates, "fronts have different objective counts");
    }
    auto const m_count = reference.objective_count();
    std::vector<double> scale(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        scale[m] = 1.0 / reference.span_or_unit(m);
    }

    double total = 0.0;
    for (auto const& r : reference.members()) {
        auto nearest = std::numeric_limits<double>::infinity();
        for (auto const& a : approximation.members()) {
            double squared = 0.0;
            for (std::size_t m = 0; m < m_count; ++m) {
                auto const d = (a.objectives[m] - r.objectives[m]) * scale[m];
                squared += d * d;
            }
            nearest = std::min(nearest, squared);
        }
        total += std::sqrt(nearest);
    }
    return total / static_cast<double>(reference.size());
}

} // namespace adaptui
