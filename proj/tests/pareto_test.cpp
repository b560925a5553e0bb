#include "adaptui/error.hpp"
#include "adaptui/pareto.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <set>

namespace adaptui {
namespace {

using testing::point;
using testing::points;
using testing::random_population;

constexpr double kPi = std::numbers::pi;

// Pairwise reference implementation of constrained domination, written
// independently of the library.
auto oracle_dominates(Candidate const& a, Candidate const& b) -> bool
{
    auto const va = std::max(a.reach_violation, 0.0) + std::max(a.preference_violation, 0.0);
    auto const vb = std::max(b.reach_violation, 0.0) + std::max(b.preference_violation, 0.0);
    if (va > 0 || vb > 0) {
        return va < vb;
    }
    bool strictly = false;
    for (std::size_t m = 0; m < a.objectives.size(); ++m) {
        if (a.objectives[m] > b.objectives[m]) {
            return false;
        }
        strictly = strictly || a.objectives[m] < b.objectives[m];
    }
    return strictly;
}

// Repeatedly peels off the members nobody remaining dominates.
auto peel(std::vector<Candidate> const& pop) -> std::vector<std::vector<std::size_t>>
{
    std::vector<std::size_t> remaining(pop.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (auto i : remaining) {
            bool dominated = std::any_of(remaining.begin(), remaining.end(),
                                         [&](std::size_t j) { return oracle_dominates(pop[j], pop[i]); });
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(front);
        remaining = rest;
    }
    return fronts;
}

auto objective_set(ParetoFront const& front) -> std::set<ObjectiveVector>
{
    std::set<ObjectiveVector> out;
    for (auto const& c : front.members()) {
        out.insert(c.objectives);
    }
    return out;
}

TEST(Dominance, Examples)
{
    EXPECT_TRUE(dominates(point({1, 2}), point({2, 3})));
    EXPECT_FALSE(dominates(point({1, 2}), point({2, 1})));
    EXPECT_FALSE(dominates(point({2, 1}), point({1, 2})));
    EXPECT_TRUE(dominates(point({9, 9}), point({0, 0}, 0.1)));
    EXPECT_FALSE(dominates(point({0, 0}, 0.1), point({9, 9})));
    EXPECT_TRUE(dominates(point({5, 5}, 0.1), point({0, 0}, 0.0, 0.2)));
    EXPECT_FALSE(dominates(point({1, 1}), point({1, 1})));
}

TEST(Dominance, MismatchedLengths)
{
    try {
        dominates(point({1, 2}), point({1, 2, 3}));
        FAIL();
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompatibleCandidates);
    }
}

TEST(Dominance, StrictPartialOrder)
{
    Rng rng(21);
    auto draw = [&] {
        // Coarse lattice so equal components and equal violations show up.
        ObjectiveVector f{std::floor(uniform01(rng) * 4), std::floor(uniform01(rng) * 4)};
        double const reach = uniform01(rng) < 0.3 ? std::floor(uniform01(rng) * 3) * 0.1 : -0.1;
        return point(f, reach);
    };
    for (int t = 0; t < 10000; ++t) {
        auto const a = draw();
        auto const b = draw();
        auto const c = draw();
        EXPECT_FALSE(dominates(a, a));
        EXPECT_FALSE(dominates(a, b) && dominates(b, a));
        if (dominates(a, b) && dominates(b, c)) {
            EXPECT_TRUE(dominates(a, c));
        }
        EXPECT_EQ(dominates(a, b), oracle_dominates(a, b));
    }
}

TEST(Sort, Examples)
{
    auto const ranked = non_dominated_sort(points({{0, 1}, {1, 0}, {1, 1}}));
    EXPECT_EQ(ranked.fronts, (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
    EXPECT_EQ(non_dominated_sort(points({{0, 0}})).fronts, (std::vector<std::vector<std::size_t>>{{0}}));
    EXPECT_THROW(non_dominated_sort(std::vector<Candidate>{}), Error);
}

TEST(Sort, MatchesPeelingOracle)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        auto const pop = random_population(rng, 1000, 2, seed % 2 == 0 ? 0 : 20);
        ASSERT_EQ(non_dominated_sort(pop).fronts, peel(pop)) << "seed " << seed;
    }
}

TEST(Sort, MatchesOracleWithInfeasibleMembers)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(1000 + seed);
        auto pop = random_population(rng, 300, 3, 8);
        for (auto& c : pop) {
            if (uniform01(rng) < 0.25) {
                c.reach_violation = std::floor(uniform01(rng) * 5) * 0.01 + 0.01;
            }
        }
        ASSERT_EQ(non_dominated_sort(pop).fronts, peel(pop)) << "seed " << seed;
    }
}

TEST(Sort, PermutationInvariant)
{
    Rng rng(22);
    auto pop = random_population(rng, 400, 2, 10);
    auto const fronts = non_dominated_sort(pop).fronts;

    std::vector<std::size_t> perm(pop.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Candidate> shuffled;
    for (auto i : perm) {
        shuffled.push_back(pop[i]);
    }
    auto const permuted = non_dominated_sort(shuffled).fronts;
    ASSERT_EQ(permuted.size(), fronts.size());
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::set<std::size_t> mapped;
        for (auto i : permuted[r]) {
            mapped.insert(perm[i]);
        }
        EXPECT_EQ(mapped, std::set<std::size_t>(fronts[r].begin(), fronts[r].end()));
    }
}

TEST(Filter, Examples)
{
    auto const front = pareto_filter(points({{0, 1}, {1, 0}, {1, 1}}));
    EXPECT_EQ(objective_set(front), (std::set<ObjectiveVector>{{0, 1}, {1, 0}}));

    auto const same = pareto_filter(points({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5 + 1e-12}}));
    EXPECT_EQ(same.size(), 1U);
}

TEST(Filter, SubsetAndMutuallyIncomparable)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(300 + seed);
        auto const pop = random_population(rng, 500, 2 + seed % 2, 12);
        auto const front = pareto_filter(pop);
        std::set<ObjectiveVector> all;
        for (auto const& c : pop) {
            all.insert(c.objectives);
        }
        for (auto const& a : front.members()) {
            EXPECT_TRUE(all.contains(a.objectives));
            for (auto const& b : front.members()) {
                EXPECT_FALSE(dominates(a, b));
            }
        }
        EXPECT_EQ(objective_set(front).size(), front.size());
        EXPECT_EQ(pareto_filter(front.members()), front);
    }
}

TEST(Front, RangesAndMinimizers)
{
    ParetoFront const front(points({{0, 1}, {0.3, 0.3}, {1, 0}}));
    EXPECT_EQ(front.ranges()[0], (std::pair<double, double>{0, 1}));
    EXPECT_EQ(front.minimizer(0), 0U);
    EXPECT_EQ(front.minimizer(1), 2U);
    ParetoFront const flat(points({{2, 1}}));
    EXPECT_EQ(flat.span_or_unit(0), 1.0);
}

TEST(Igd, HandComputed)
{
    ParetoFront const approx(points({{0, 1}, {1, 0}}));
    ParetoFront const reference(points({{0, 1}, {0.5, 0.5}, {1, 0}}));
    EXPECT_NEAR(igd(approx, reference), std::sqrt(0.5) / 3, 1e-12);
    EXPECT_NEAR(igd(approx, reference), 0.2357, 1e-4);
    EXPECT_EQ(igd(reference, reference), 0.0);
    EXPECT_THROW(igd(ParetoFront{}, reference), Error);
}

TEST(Igd, ZeroWheneverReferenceIsContained)
{
    Rng rng(23);
    auto const pop = random_population(rng, 200, 2);
    auto const reference = pareto_filter(pop);
    auto superset = std::vector<Candidate>(reference.members().begin(), reference.members().end());
    auto const extra = random_population(rng, 50, 2);
    superset.insert(superset.end(), extra.begin(), extra.end());
    EXPECT_EQ(igd(ParetoFront(superset), reference), 0.0);
}

TEST(Oracle, ResolutionTwoHasNoFeasibleCorner)
{
    AdaptationProblem const problem(UserPose::standing_default());
    // Box corners sit at sqrt(3) * L from the shoulder, outside reach.
    EXPECT_TRUE(feasible_grid(problem, 2).empty());
    EXPECT_TRUE(brute_force_front(problem, 2).empty());
    EXPECT_THROW(brute_force_front(problem, 1), Error);
}

TEST(Oracle, ResolutionThreeIsTheFilteredFeasibleGrid)
{
    AdaptationProblem const problem(UserPose::standing_default());
    auto const grid = feasible_grid(problem, 3);
    ASSERT_FALSE(grid.empty());
    for (auto const& c : grid) {
        EXPECT_TRUE(c.feasible());
    }
    EXPECT_EQ(brute_force_front(problem, 3), pareto_filter(grid));
}

TEST(Oracle, ThreadCountDoesNotMatter)
{
    AdaptationProblem const problem(UserPose::standing_default());
    EXPECT_EQ(brute_force_front(problem, 40, {.threads = 1}), brute_force_front(problem, 40, {.threads = 4}));
}

TEST(Oracle, FixedPointOfFilter)
{
    auto const& front = testing::default_oracle();
    EXPECT_EQ(pareto_filter(front.members()), front);
}

TEST(Oracle, ContainsHandDerivedExtremes)
{
    auto const& front = testing::default_oracle();
    auto nearest = [&](double neck, double arm) {
        double best = 1e9;
        for (auto const& c : front.members()) {
            best = std::min(best, std::max(std::abs(c.objectives[0] - neck), std::abs(c.objectives[1] - arm)));
        }
        return best;
    };
    EXPECT_LE(nearest(kPi / 2, 0.0), 0.02);
    EXPECT_LE(nearest(0.0, 1.966), 0.05);
}

TEST(Oracle, RefinementNearlyNonDominated)
{
    // No member of the finer front beats a coarse member in every objective
    // by more than the angle a grid diagonal subtends near the reach boundary.
    AdaptationProblem const problem(UserPose::standing_default());
    for (int r : {12, 20}) {
        auto const coarse = brute_force_front(problem, r);
        auto const fine = brute_force_front(problem, 2 * r);
        auto const diagonal = std::sqrt(3.0) * 2 * 0.65 / (r - 1);
        auto const tolerance = 2 * diagonal / 0.65;
        for (auto const& a : coarse.members()) {
            double margin = 0;
            for (auto const& b : fine.members()) {
                margin = std::max(margin, std::min(a.objectives[0] - b.objectives[0], a.objectives[1] - b.objectives[1]));
            }
            EXPECT_LE(margin, tolerance) << "resolution " << r;
        }
    }
}

} // namespace
} // namespace adaptui
