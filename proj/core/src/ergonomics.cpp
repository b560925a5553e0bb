#include "adaptui/ergonomics.hpp"
#include "adaptui/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace adaptui {

namespace {

constexpr double kUnitTolerance = 1e-9;

auto is_unit(Vec3 v) -> bool { return std::abs(norm(v) - 1.0) <= kUnitTolerance; }

auto angle_from(Vec3 anchor, Vec3 axis, Vec3 p) -> std::optional<double>
{
    auto const offset = p - anchor;
    auto const length = norm(offset);
    if (length < kDegeneracyRadius) {
        return std::nullopt;
    }
    return std::acos(std::clamp(dot(axis, (1.0 / length) * offset), -1.0, 1.0));
}

auto angle_or_worst(UserPose const& pose, Objective objective, Vec3 p) -> double
{
    auto const angle = objective == Objective::NeckAngle
        ? angle_from(pose.head_position, pose.gaze_forward, p)
        : angle_from(pose.shoulder_position, pose.arm_rest_direction, p);
    return angle.value_or(std::numbers::pi);
}

} // namespace

auto UserPose::standing_default() -> UserPose
{
    return UserPose{
        .head_position = {0.0, 1.70, 0.0},
        .gaze_forward = {0.0, 0.0, 1.0},
        .shoulder_position = {0.20, 1.45, 0.0},
        .arm_rest_direction = {0.0, -1.0, 0.0},
        .arm_length = 0.65,
    };
}

void UserPose::validate() const
{
    if (!(arm_length > 0.0) || !std::isfinite(arm_length)) {
        throw Error(ErrorCode::Validation, "arm_length must be a positive number", "arm_length");
    }
    if (!is_unit(gaze_forward)) {
        throw Error(ErrorCode::Validation, "gaze_forward must be a unit vector", "gaze_forward");
    }
    if (!is_unit(arm_rest_direction)) {
        throw Error(ErrorCode::Validation, "arm_rest_direction must be a unit vector", "arm_rest_direction");
    }
    for (auto const* v : {&head_position, &shoulder_position}) {
        if (!std::isfinite(v->x) || !std::isfinite(v->y) || !std::isfinite(v->z)) {
            throw Error(ErrorCode::Validation, "positions must be finite",
                        v == &head_position ? "head_position" : "shoulder_position");
        }
    }
    if (head_position == shoulder_position) {
        throw Error(ErrorCode::Validation, "head_position and shoulder_position coincide", "shoulder_position");
    }
}

auto objective_id(Objective objective) -> std::string_view
{
    switch (objective) {
    case Objective::NeckAngle:
        return "neck_angle";
    case Objective::ArmAngle:
        return "arm_angle";
    }
    return "unknown";
}

auto parse_objective(std::string_view id) -> std::optional<Objective>
{
    if (id == "neck_angle") {
        return Objective::NeckAngle;
    }
    if (id == "arm_angle") {
        return Objective::ArmAngle;
    }
    return std::nullopt;
}

auto Candidate::total_violation() const noexcept -> double
{
    return std::max(reach_violation, 0.0) + std::max(preference_violation, 0.0);
}

AdaptationProblem::AdaptationProblem(UserPose pose, std::vector<Objective> objectives)
    : pose_(pose)
    , objectives_(std::move(objectives))
{
    pose_.validate();
    if (objectives_.empty()) {
        throw Error(ErrorCode::InvalidConfiguration, "a problem needs at least one objective", "objectives");
    }
    for (std::size_t i = 0; i < objectives_.size(); ++i) {
        if (std::find(objectives_.begin(), objectives_.begin() + static_cast<std::ptrdiff_t>(i), objectives_[i])
            != objectives_.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw Error(ErrorCode::InvalidConfiguration, "duplicate objective in problem", "objectives");
        }
    }
    auto const reach = Vec3{pose_.arm_length, pose_.arm_length, pose_.arm_length};
    bounds_ = Box{pose_.shoulder_position - reach, pose_.shoulder_position + reach};
}

auto AdaptationProblem::objective_index(Objective objective) const -> std::optional<std::size_t>
{
    auto it = std::find(objectives_.begin(), objectives_.end(), objective);
    if (it == objectives_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - objectives_.begin());
}

void AdaptationProblem::set_constraint(PreferenceConstraint constraint)
{
    if (!objective_index(constraint.objective)) {
        throw Error(ErrorCode::InvalidConfiguration,
                    "constraint on objective '" + std::string(objective_id(constraint.objective))
                        + "' which the problem does not optimize",
                    "constraints");
    }
    auto it = std::find_if(constraints_.begin(), constraints_.end(),
                           [&](auto const& c) { return c.objective == constraint.objective; });
    if (it == constraints_.end()) {
        constraints_.push_back(constraint);
    } else {
        *it = constraint;
    }
}

void AdaptationProblem::set_constraints(std::vector<PreferenceConstraint> constraints)
{
    constraints_.clear();
    for (auto const& c : constraints) {
        set_constraint(c);
    }
}

auto neck_angle(UserPose const& pose, Vec3 p) -> double
{
    auto angle = angle_from(pose.head_position, pose.gaze_forward, p);
    if (!angle) {
        throw Error(ErrorCode::DegeneratePosition, "placement coincides with the head position");
    }
    return *angle;
}

auto arm_angle(UserPose const& pose, Vec3 p) -> double
{
    auto angle = angle_from(pose.shoulder_position, pose.arm_rest_direction, p);
    if (!angle) {
        throw Error(ErrorCode::DegeneratePosition, "placement coincides with the shoulder position");
    }
    return *angle;
}

auto reach_violation(UserPose const& pose, Vec3 p) -> double
{
    return distance(p, pose.shoulder_position) - pose.arm_length;
}

auto objective_value(UserPose const& pose, Objective objective, Vec3 p) -> double
{
    return angle_or_worst(pose, objective, p);
}

auto evaluate(AdaptationProblem const& problem, Vec3 p) -> Candidate
{
    if (!problem.bounds().contains(p)) {
        throw Error(ErrorCode::OutOfBounds, "placement lies outside the decision box");
    }
    Candidate candidate;
    candidate.position = p;
    candidate.objectives.reserve(problem.objective_count());
    for (auto objective : problem.objectives()) {
        candidate.objectives.push_back(angle_or_worst(problem.pose(), objective, p));
    }
    candidate.reach_violation = reach_violation(problem.pose(), p);

    if (!problem.constraints().empty()) {
        auto worst = -std::numeric_limits<double>::infinity();
        for (auto const& c : problem.constraints()) {
            auto const m = *problem.objective_index(c.objective);
            worst = std::max(worst, candidate.objectives[m] - c.upper_bound);
        }
        candidate.preference_violation = worst;
    }
    return candidate;
}

} // namespace adaptui
