// Acceptance gate: one PASS/FAIL line per primary criterion, exit status 1
// if any fails.

#include "adaptui/annealing.hpp"
#include "adaptui/harness.hpp"
#include "adaptui/nsga3.hpp"
#include "adaptui/pareto.hpp"
#include "adaptui/random.hpp"
#include "adaptui/selection.hpp"
#include "adaptui/serialization.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace {

using namespace adaptui;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass{};
    std::string detail;
};

auto seconds_since(Clock::time_point start) -> double
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

auto fmt(char const* format, auto... args) -> std::string
{
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

auto chebyshev_to_front(ParetoFront const& front, ObjectiveVector const& target) -> double
{
    double best = std::numeric_limits<double>::infinity();
    for (auto const& c : front.members()) {
        best = std::min(best, std::max(std::abs(c.objectives[0] - target[0]), std::abs(c.objectives[1] - target[1])));
    }
    return best;
}

auto point(ObjectiveVector f, double reach = 0.0) -> Candidate
{
    return Candidate{.position = {}, .objectives = std::move(f), .reach_violation = reach, .preference_violation = 0};
}

auto brute_dominates(Candidate const& a, Candidate const& b) -> bool
{
    auto const va = std::max(a.reach_violation, 0.0);
    auto const vb = std::max(b.reach_violation, 0.0);
    if (va > 0 || vb > 0) {
        return va < vb;
    }
    return a.objectives[0] <= b.objectives[0] && a.objectives[1] <= b.objectives[1] && a.objectives != b.objectives;
}

auto peel(std::vector<Candidate> const& pop) -> std::vector<std::vector<std::size_t>>
{
    std::vector<std::size_t> remaining(pop.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (auto i : remaining) {
            bool dominated = false;
            for (auto j : remaining) {
                dominated = dominated || brute_dominates(pop[j], pop[i]);
            }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(front);
        remaining = rest;
    }
    return fronts;
}

auto collapse() -> Outcome
{
    auto const start = Clock::now();
    AdaptationProblem const problem(UserPose::standing_default());
    std::vector<double> const w{0.5, 0.5};
    auto const sa = anneal_weighted_sum(problem, w, AnnealConfig{});
    auto const grid = feasible_grid(problem, kDefaultOracleResolution, {.threads = 0});
    auto const& argmin = grid[scalarized_argmin(grid, w)];
    auto const elapsed = seconds_since(start);

    auto gap = [](ObjectiveVector const& f) { return std::max(std::abs(f[0] - kPi / 2), std::abs(f[1])); };
    auto const sa_gap = gap(sa.objectives);
    auto const grid_gap = gap(argmin.objectives);
    return {sa_gap <= 0.02 && grid_gap <= 0.02 && elapsed < 10.0,
            fmt("SA (%.4f, %.4f) gap %.4f, grid argmin (%.4f, %.4f) gap %.4f, tol 0.02 rad, %.2f s < 10 s",
                sa.objectives[0], sa.objectives[1], sa_gap, argmin.objectives[0], argmin.objectives[1], grid_gap,
                elapsed)};
}

auto frontier_approximation() -> Outcome
{
    auto const start = Clock::now();
    AdaptationProblem const problem(UserPose::standing_default());
    auto const oracle = brute_force_front(problem, 96, {.threads = 0});
    Nsga3Config config;
    config.population_size = 100;
    config.generations = 200;
    config.seed = 42;
    auto const front = nsga3_run(problem, config);
    auto const value = igd(front, oracle);
    auto const arm = chebyshev_to_front(front, {kPi / 2, 0.0});
    auto const neck = chebyshev_to_front(front, {0.0, std::acos(-0.25 / 0.65)});
    auto const elapsed = seconds_since(start);
    return {value <= 0.02 && arm <= 0.05 && neck <= 0.05 && elapsed < 60.0,
            fmt("IGD %.5f <= 0.02, arm extreme %.4f / neck extreme %.4f <= 0.05 rad, %.2f s < 60 s", value, arm,
                neck, elapsed)};
}

auto non_convex_coverage() -> Outcome
{
    auto const start = Clock::now();
    SimulationConfig const config;
    auto const sweep = sweep_weights(config, 11, {.threads = 0});
    std::set<std::size_t> distinct;
    bool on_front = true;
    for (auto const& p : sweep.points) {
        distinct.insert(p.front_index);
        on_front = on_front && p.front_index < sweep.oracle_front.size()
            && sweep.oracle_front[p.front_index].objectives == p.objectives;
    }
    auto const strict = distinct.size() < sweep.oracle_front.size();

    auto const front = nsga3_run(AdaptationProblem(config.pose), config.nsga3);
    bool mutual = true;
    for (auto const& a : front.members()) {
        for (auto const& b : front.members()) {
            mutual = mutual && !dominates(a, b);
        }
    }
    auto const span = front.ranges()[0].second - front.ranges()[0].first;
    auto const elapsed = seconds_since(start);
    return {on_front && strict && mutual && front.size() >= 10 && span >= 1.0 && elapsed < 60.0,
            fmt("sweep reaches %zu of %zu oracle members, NSGA-III %zu non-dominated points spanning %.3f rad "
                "neck, %.2f s < 60 s",
                distinct.size(), sweep.oracle_front.size(), front.size(), span, elapsed)};
}

auto sorting_oracle() -> Outcome
{
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        std::vector<Candidate> pop;
        for (int i = 0; i < 1000; ++i) {
            pop.push_back(point({uniform01(rng), uniform01(rng)}));
        }
        mismatches += non_dominated_sort(pop).fronts != peel(pop);
    }

    std::size_t violations = 0;
    Rng rng(2024);
    auto draw = [&] {
        ObjectiveVector f{std::floor(uniform01(rng) * 4), std::floor(uniform01(rng) * 4)};
        return point(f, uniform01(rng) < 0.3 ? std::floor(uniform01(rng) * 3) * 0.1 : 0.0);
    };
    for (int t = 0; t < 10000; ++t) {
        auto const a = draw();
        auto const b = draw();
        auto const c = draw();
        violations += dominates(a, a);
        violations += dominates(a, b) && dominates(b, a);
        violations += dominates(a, b) && dominates(b, c) && !dominates(a, c);
    }
    return {mismatches == 0 && violations == 0,
            fmt("%zu/100 seeds differ from pairwise oracle, %zu order violations in 10^4 triples", mismatches,
                violations)};
}

auto knee_metric() -> Outcome
{
    ParetoFront const front(std::vector<Candidate>{point({0, 1}), point({0.3, 0.3}), point({1, 0})});
    auto const mu = tradeoff_mu_all(front);
    auto const err = std::max({std::abs(mu[0] - 0.3 / 0.7), std::abs(mu[1] - 0.7 / 0.3), std::abs(mu[2] - 0.3 / 0.7)});
    auto const reduced = reduce_front(front, 3);
    bool knee_flagged = false;
    for (auto const& r : reduced) {
        knee_flagged = knee_flagged || (r.front_index == 1 && !r.is_extreme);
    }
    auto const pick = reduced[auto_pick(reduced)].front_index;
    return {err <= 1e-9 && reduced.size() == 3 && knee_flagged && pick == 1,
            fmt("mu = (%.6f, %.6f, %.6f), max error %.2e <= 1e-9, %zu returned, knee flagged %s", mu[0], mu[1], mu[2],
                err, reduced.size(), knee_flagged ? "yes" : "no")};
}

auto elicitation_loop() -> Outcome
{
    Session session{
        .id = "acceptance",
        .problem = AdaptationProblem(UserPose::standing_default()),
        .nsga3 = {},
        .reduction_k = kDefaultReductionSize,
        .tau = kDefaultTau,
        .rounds = {},
    };
    session = open_round(session, nsga3_run(session.problem, session.nsga3));

    double worst = 0;
    std::size_t members = 0;
    bool monotone = true;
    std::vector<double> bounds(2, std::numeric_limits<double>::infinity());
    // Cycle the pick across rounds so different candidate kinds are exercised.
    for (std::size_t round = 0; round < 5; ++round) {
        auto const& latest = session.rounds.back();
        auto const pick = round % latest.reduced.size();
        session = apply_selection(session, candidate_id(latest.number, pick));
        for (auto const& c : session.constraints()) {
            auto const m = *session.problem.objective_index(c.objective);
            monotone = monotone && c.upper_bound <= bounds[m];
            bounds[m] = c.upper_bound;
        }
        session = open_round(session, nsga3_run(session.problem, session.nsga3));
        for (auto const& c : session.rounds.back().front.members()) {
            ++members;
            worst = std::max(worst, c.preference_violation);
            for (auto const& bound : session.constraints()) {
                worst = std::max(worst, c.objectives[*session.problem.objective_index(bound.objective)]
                                            - bound.upper_bound);
            }
        }
    }
    return {worst <= 1e-9 && monotone,
            fmt("5 select/adapt rounds, %zu members, worst violation %.2e <= 1e-9, bounds non-increasing %s", members,
                worst, monotone ? "yes" : "no")};
}

auto determinism() -> Outcome
{
    namespace fs = std::filesystem;
    auto const root = fs::temp_directory_path() / "adaptui_acceptance";
    fs::remove_all(root);
    SimulationConfig const config;
    run_simulation(config, root / "a", {.threads = 1});
    run_simulation(config, root / "b", {.threads = 1});
    run_simulation(config, root / "c", {.threads = 4});
    std::size_t differing = 0;
    for (auto const* name : {"oracle_front.csv", "nsga3_front.csv"}) {
        auto const reference = read_file(root / "a" / name);
        differing += read_file(root / "b" / name) != reference;
        differing += read_file(root / "c" / name) != reference;
    }
    fs::remove_all(root);
    return {differing == 0, fmt("%zu of 4 CSV comparisons differ (two runs, 1 vs 4 threads)", differing)};
}

} // namespace

int main()
{
    struct Criterion {
        char const* name;
        std::function<Outcome()> check;
    };
    Criterion const criteria[] = {
        {"weighted-sum collapse", collapse},
        {"frontier approximation", frontier_approximation},
        {"non-convex coverage", non_convex_coverage},
        {"sorting oracle equivalence", sorting_oracle},
        {"knee metric", knee_metric},
        {"elicitation loop", elicitation_loop},
        {"determinism", determinism},
    };

    int failed = 0;
    for (auto const& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (std::exception const& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += !outcome.pass;
        std::printf("%s  %-28s %s\n", outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
