#include "adaptui/annealing.hpp"
#include "adaptui/error.hpp"
#include "adaptui/random.hpp"

#include <cmath>
#include <limits>

namespace adaptui {

namespace {

void require(bool ok, char const* field, char const* message)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidConfiguration, message, field);
    }
}

/// Shrinks p radially toward the shoulder until it is within reach.
auto pull_inside_reach(UserPose const& pose, Vec3 p) -> Vec3
{
    auto const offset = p - pose.shoulder_position;
    auto const length = norm(offset);
    if (length <= pose.arm_length) {
        return p;
    }
    return pose.shoulder_position + (pose.arm_length * (1.0 - 1e-9) / length) * offset;
}

} // namespace

void AnnealConfig::validate() const
{
    require(initial_temperature > 0.0 && std::isfinite(initial_temperature), "initial_temperature",
            "initial_temperature must be positive");
    require(cooling_factor > 0.0 && cooling_factor < 1.0, "cooling_factor", "cooling_factor must lie in (0, 1)");
    require(cooling_interval > 0, "cooling_interval", "cooling_interval must be positive");
    require(proposal_sigma > 0.0 && std::isfinite(proposal_sigma), "proposal_sigma",
            "proposal_sigma must be positive");
}

auto weighted_sum_cost(std::span<double const> objectives, std::span<double const> weights) -> double
{
    require(objectives.size() == weights.size(), "weights", "weights and objectives differ in length");
    double cost = 0.0;
    bool any_positive = false;
    for (std::size_t m = 0; m < weights.size(); ++m) {
        require(weights[m] >= 0.0, "weights", "weights must be non-negative");
        any_positive = any_positive || weights[m] > 0.0;
        cost += weights[m] * objectives[m];
    }
    require(any_positive, "weights", "weights must not all be zero");
    return cost;
}

auto anneal_weighted_sum(AdaptationProblem const& problem, std::span<double const> weights,
                         AnnealConfig const& config) -> Candidate
{
    config.validate();
    auto const& pose = problem.pose();
    auto const& box = problem.bounds();
    Rng rng(config.seed);
    std::normal_distribution<double> step(0.0, config.proposal_sigma);

    auto const perturb = [&](Vec3 p) {
        auto const dx = step(rng);
        auto const dy = step(rng);
        auto const dz = step(rng);
        return box.clamp(p + Vec3{dx, dy, dz});
    };

    auto const rest = pose.shoulder_position + pose.arm_length * pose.arm_rest_direction;
    auto current = evaluate(problem, box.clamp(pull_inside_reach(pose, perturb(box.clamp(rest)))));
    auto current_cost = weighted_sum_cost(current.objectives, weights);

    auto best = current;
    auto best_cost = current.feasible() ? current_cost : std::numeric_limits<double>::infinity();
    auto temperature = config.initial_temperature;

    for (std::size_t iteration = 0; iteration < config.iterations; ++iteration) {
        if (iteration > 0 && iteration % config.cooling_interval == 0) {
            temperature *= config.cooling_factor;
        }
        auto proposal = evaluate(problem, perturb(current.position));
        auto const u = uniform01(rng);
        if (!proposal.feasible()) {
            continue;
        }
        auto const cost = weighted_sum_cost(proposal.objectives, weights);
        auto const delta = cost - current_cost;
        if (delta <= 0.0 || !current.feasible() || u < std::exp(-delta / temperature)) {
            current = std::move(proposal);
            current_cost = cost;
            if (current_cost < best_cost) {
                best = current;
                best_cost = current_cost;
            }
        }
    }

    if (!best.feasible()) {
        throw Error(ErrorCode::InfeasibleSearch, "annealing found no feasible placement");
    }
    return best;
}

} // namespace adaptui
