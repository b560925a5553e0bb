#ifndef ADAPTUI_RANDOM_HPP
#define ADAPTUI_RANDOM_HPP

#include <random>

namespace adaptui {

/// Every stochastic routine owns one of these, seeded explicitly.
using Rng = std::mt19937_64;

inline auto uniform01(Rng& rng) -> double { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

} // namespace adaptui

#endif
