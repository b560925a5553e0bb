#ifndef ADAPTUI_TESTS_SUPPORT_HPP
#define ADAPTUI_TESTS_SUPPORT_HPP

#include "adaptui/ergonomics.hpp"
#include "adaptui/pareto.hpp"
#include "adaptui/random.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace adaptui::testing {

inline auto point(ObjectiveVector f, double reach = 0.0, double pref = 0.0) -> Candidate
{
    return Candidate{.position = {}, .objectives = std::move(f), .reach_violation = reach,
                     .preference_violation = pref};
}

inline auto points(std::vector<ObjectiveVector> const& fs) -> std::vector<Candidate>
{
    std::vector<Candidate> out;
    for (auto const& f : fs) {
        out.push_back(point(f));
    }
    return out;
}

/// Uniform objective vectors in [0, 1)^m, optionally snapped to a coarse
/// lattice so ties and duplicates actually occur.
inline auto random_population(Rng& rng, std::size_t n, std::size_t m, int lattice = 0) -> std::vector<Candidate>
{
    std::vector<Candidate> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ObjectiveVector f(m);
        for (auto& v : f) {
            v = uniform01(rng);
            if (lattice > 0) {
                v = std::floor(v * lattice) / lattice;
            }
        }
        out.push_back(point(std::move(f)));
    }
    return out;
}

inline auto random_in_box(Rng& rng, Box const& box) -> Vec3
{
    Vec3 p;
    for (int a = 0; a < 3; ++a) {
        p[a] = box.lower[a] + uniform01(rng) * box.extent(a);
    }
    return p;
}

inline auto random_unit(Rng& rng) -> Vec3
{
    std::normal_distribution<double> n;
    Vec3 v{n(rng), n(rng), n(rng)};
    return normalized(v);
}

/// brute_force_front(96) of the default problem, computed once per process.
auto default_oracle() -> ParetoFront const&;

} // namespace adaptui::testing

#endif
