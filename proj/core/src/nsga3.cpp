#include "adaptui/nsga3.hpp"
#include "adaptui/error.hpp"
#include "adaptui/random.hpp"
#include "adaptui/reference_directions.hpp"
#include "adaptui/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace adaptui {

namespace {

constexpr double kAsfOffAxisWeight = 1e-6;
constexpr double kMinIntercept = 1e-6;

void require(bool ok, char const* field, std::string const& message)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidConfiguration, message, field);
    }
}

auto evaluate_all(AdaptationProblem const& problem, std::span<Vec3 const> positions, ExecutionOptions const& options)
    -> std::vector<Candidate>
{
    std::vector<Candidate> out(positions.size());
    parallel_for(positions.size(), options, [&](std::size_t i) { out[i] = evaluate(problem, positions[i]); });
    return out;
}

auto random_position(Box const& box, Rng& rng) -> Vec3
{
    Vec3 p;
    for (int i = 0; i < 3; ++i) {
        p[i] = box.lower[i] + uniform01(rng) * box.extent(i);
    }
    return box.clamp(p);
}

auto uniform_index(std::size_t n, Rng& rng) -> std::size_t
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Binary tournament: feasibility first, then lower violation, then a coin.
auto tournament(std::span<Candidate const> population, Rng& rng) -> std::size_t
{
    auto const a = uniform_index(population.size(), rng);
    auto const b = uniform_index(population.size(), rng);
    auto const va = population[a].total_violation();
    auto const vb = population[b].total_violation();
    auto const coin = uniform01(rng) < 0.5;
    if (va > 0.0 || vb > 0.0) {
        if (va != vb) {
            return va < vb ? a : b;
        }
    }
    return coin ? a : b;
}

/// Solves A x = rhs for a small dense system by partial pivoting.
auto solve_linear(std::vector<std::vector<double>> a, std::vector<double> rhs) -> std::optional<std::vector<double>>
{
    auto const n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            return std::nullopt;
        }
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            auto const factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        auto sum = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            sum -= a[i][k] * x[k];
        }
        x[i] = sum / a[i][i];
    }
    return x;
}

class Survival {
public:
    Survival(ReferenceDirectionSet const& refs, std::size_t objective_count)
        : refs_(refs)
        , m_count_(objective_count)
    {
    }

    /// Chooses `target` survivors from `merged`; returns their indices and
    /// how many of them are constrained-non-dominated.
    auto select(std::span<Candidate const> merged, std::size_t target, Rng& rng) -> std::pair<std::vector<std::size_t>, std::size_t>
    {
        auto const ranked = non_dominated_sort(merged);

        std::vector<std::size_t> chosen;
        std::vector<std::size_t> last;
        for (auto const& front : ranked.fronts) {
            if (chosen.size() + front.size() <= target) {
                chosen.insert(chosen.end(), front.begin(), front.end());
                if (chosen.size() == target) {
                    break;
                }
            } else {
                last = front;
                break;
            }
        }
        auto const rank0_survivors = std::min(ranked.fronts.front().size(), target);
        if (last.empty()) {
            return {chosen, rank0_survivors};
        }

        std::vector<std::size_t> considered = chosen;
        considered.insert(considered.end(), last.begin(), last.end());
        auto const normalized = normalize(merged, considered, ranked.fronts.front());

        // Association of every considered member to its nearest direction.
        std::vector<std::size_t> niche(considered.size());
        std::vector<double> distance(considered.size());
        for (std::size_t k = 0; k < considered.size(); ++k) {
            std::tie(niche[k], distance[k]) = associate(normalized[k]);
        }

        std::vector<std::size_t> niche_count(refs_.size(), 0);
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            ++niche_count[niche[k]];
        }
        // pool[j]: positions (into `considered`) of last-front members attached to direction j.
        std::vector<std::vector<std::size_t>> pool(refs_.size());
        for (auto k = chosen.size(); k < considered.size(); ++k) {
            pool[niche[k]].push_back(k);
        }

        auto remaining = target - chosen.size();
        std::vector<std::size_t> ties;
        while (remaining > 0) {
            auto least = std::numeric_limits<std::size_t>::max();
            ties.clear();
            for (std::size_t j = 0; j < refs_.size(); ++j) {
                if (pool[j].empty()) {
                    continue;
                }
                if (niche_count[j] < least) {
                    least = niche_count[j];
                    ties.clear();
                }
                if (niche_count[j] == least) {
                    ties.push_back(j);
                }
            }
            auto const j = ties[uniform_index(ties.size(), rng)];
            auto& members = pool[j];
            std::size_t pick = 0;
            if (niche_count[j] == 0) {
                for (std::size_t q = 1; q < members.size(); ++q) {
                    if (distance[members[q]] < distance[members[pick]]) {
                        pick = q;
                    }
                }
            } else {
                pick = uniform_index(members.size(), rng);
            }
            chosen.push_back(considered[members[pick]]);
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
            ++niche_count[j];
            --remaining;
        }
        return {chosen, rank0_survivors};
    }

private:
    /// Objectives of `considered` translated by the ideal point and scaled by
    /// the hyperplane intercepts of the extreme points.
    auto normalize(std::span<Candidate const> merged, std::span<std::size_t const> considered,
                   std::span<std::size_t const> rank0) const -> std::vector<std::vector<double>>
    {
        std::vector<double> ideal(m_count_, std::numeric_limits<double>::infinity());
        bool any_feasible = std::any_of(merged.begin(), merged.end(), [](auto const& c) { return c.feasible(); });
        for (auto const& c : merged) {
            if (any_feasible && !c.feasible()) {
                continue;
            }
            for (std::size_t m = 0; m < m_count_; ++m) {
                ideal[m] = std::min(ideal[m], c.objectives[m]);
            }
        }

        std::vector<std::vector<double>> translated;
        translated.reserve(considered.size());
        for (auto i : considered) {
            std::vector<double> f(m_count_);
            for (std::size_t m = 0; m < m_count_; ++m) {
                f[m] = merged[i].objectives[m] - ideal[m];
            }
            translated.push_back(std::move(f));
        }

        auto const intercepts = intercepts_from_extremes(translated).value_or(
            nadir_intercepts(merged, considered, rank0, ideal));

        for (auto& f : translated) {
            for (std::size_t m = 0; m < m_count_; ++m) {
                f[m] /= intercepts[m];
            }
        }
        return translated;
    }

    auto intercepts_from_extremes(std::span<std::vector<double> const> translated) const
        -> std::optional<std::vector<double>>
    {
        std::vector<std::vector<double>> extremes;
        for (std::size_t axis = 0; axis < m_count_; ++axis) {
            std::size_t best = 0;
            auto best_value = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < translated.size(); ++k) {
                double asf = -std::numeric_limits<double>::infinity();
                for (std::size_t m = 0; m < m_count_; ++m) {
                    auto const w = m == axis ? 1.0 : kAsfOffAxisWeight;
                    asf = std::max(asf, translated[k][m] / w);
                }
                if (asf < best_value) {
                    best_value = asf;
                    best = k;
                }
            }
            extremes.push_back(translated[best]);
        }

        auto const plane = solve_linear(extremes, std::vector<double>(m_count_, 1.0));
        if (!plane) {
            return std::nullopt;
        }
        std::vector<double> intercepts(m_count_);
        for (std::size_t m = 0; m < m_count_; ++m) {
            intercepts[m] = 1.0 / (*plane)[m];
            if (!std::isfinite(intercepts[m]) || intercepts[m] <= kMinIntercept) {
                return std::nullopt;
            }
        }
        return intercepts;
    }

    auto nadir_intercepts(std::span<Candidate const> merged, std::span<std::size_t const> considered,
                          std::span<std::size_t const> rank0, std::span<double const> ideal) const
        -> std::vector<double>
    {
        std::vector<double> intercepts(m_count_);
        for (std::size_t m = 0; m < m_count_; ++m) {
            auto worst_rank0 = -std::numeric_limits<double>::infinity();
            for (auto i : rank0) {
                worst_rank0 = std::max(worst_rank0, merged[i].objectives[m]);
            }
            auto worst_considered = -std::numeric_limits<double>::infinity();
            for (auto i : considered) {
                worst_considered = std::max(worst_considered, merged[i].objectives[m]);
            }
            auto value = worst_rank0 - ideal[m];
            if (!(value > kMinIntercept)) {
                value = worst_considered - ideal[m];
            }
            intercepts[m] = value > kMinIntercept ? value : 1.0;
        }
        return intercepts;
    }

    /// Nearest reference line by perpendicular distance (first index on ties).
    auto associate(std::span<double const> f) const -> std::pair<std::size_t, double>
    {
        std::size_t best = 0;
        auto best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < refs_.size(); ++j) {
            auto const& w = refs_.directions[j];
            double fw = 0.0;
            double ww = 0.0;
            for (std::size_t m = 0; m < m_count_; ++m) {
                fw += f[m] * w[m];
                ww += w[m] * w[m];
            }
            auto const t = fw / ww;
            double squared = 0.0;
            for (std::size_t m = 0; m < m_count_; ++m) {
                auto const d = f[m] - t * w[m];
                squared += d * d;
            }
            if (squared < best_distance) {
                best_distance = squared;
                best = j;
            }
        }
        return {best, std::sqrt(best_distance)};
    }

    ReferenceDirectionSet const& refs_;
    std::size_t m_count_;
};

} // namespace

void Nsga3Config::validate(std::size_t objective_count) const
{
    require(objective_count >= 2, "objectives", "NSGA-III needs at least two objectives");
    require(generations > 0, "generations", "generations must be positive");
    require(reference_divisions > 0, "reference_divisions", "reference_divisions must be positive");
    require(sbx_eta > 0.0 && std::isfinite(sbx_eta), "sbx_eta", "sbx_eta must be positive");
    require(sbx_probability >= 0.0 && sbx_probability <= 1.0, "sbx_probability", "sbx_probability must lie in [0, 1]");
    require(mutation_eta > 0.0 && std::isfinite(mutation_eta), "mutation_eta", "mutation_eta must be positive");
    require(mutation_probability >= 0.0 && mutation_probability <= 1.0, "mutation_probability",
            "mutation_probability must lie in [0, 1]");

    auto const refs = das_dennis_count(objective_count, reference_divisions);
    auto const minimum = (refs + 3) / 4 * 4;
    require(population_size >= minimum, "population_size",
            "population_size must be at least " + std::to_string(minimum) + " for "
                + std::to_string(reference_divisions) + " reference divisions");
}

auto nsga3_run(AdaptationProblem const& problem, Nsga3Config const& config, ExecutionOptions const& options,
               ProgressCallback const& progress) -> ParetoFront
{
    auto const m_count = problem.objective_count();
    config.validate(m_count);

    auto const refs = das_dennis(m_count, config.reference_divisions);
    auto const& box = problem.bounds();
    auto const n = config.population_size;
    Rng rng(config.seed);

    std::vector<Vec3> positions(n);
    for (auto& p : positions) {
        p = random_position(box, rng);
    }
    auto population = evaluate_all(problem, positions, options);

    Survival survival(refs, m_count);
    for (std::size_t generation = 0; generation < config.generations; ++generation) {
        std::vector<Vec3> offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            auto const a = population[tournament(population, rng)].position;
            auto const b = population[tournament(population, rng)].position;
            auto [child_a, child_b] = sbx_crossover(a, b, config.sbx_eta, config.sbx_probability, box, rng);
            offspring.push_back(polynomial_mutation(child_a, config.mutation_eta, config.mutation_probability, box, rng));
            auto mutated_b = polynomial_mutation(child_b, config.mutation_eta, config.mutation_probability, box, rng);
            if (offspring.size() < n) {
                offspring.push_back(mutated_b);
            }
        }

        auto merged = std::move(population);
        auto children = evaluate_all(problem, offspring, options);
        std::move(children.begin(), children.end(), std::back_inserter(merged));

        auto [survivors, rank0_size] = survival.select(merged, n, rng);
        std::sort(survivors.begin(), survivors.end());
        population.clear();
        population.reserve(n);
        for (auto i : survivors) {
            population.push_back(std::move(merged[i]));
        }

        if (progress) {
            progress(GenerationProgress{generation + 1, config.generations, rank0_size});
        }
    }

    std::vector<Candidate> feasible;
    std::copy_if(population.begin(), population.end(), std::back_inserter(feasible),
                 [](auto const& c) { return c.feasible(); });
    if (feasible.empty()) {
        throw Error(ErrorCode::InfeasibleSearch, "NSGA-III finished without a feasible placement");
    }
    return pareto_filter(feasible);
}

} // namespace adaptui
