#ifndef ADAPTUI_ERGONOMICS_HPP
#define ADAPTUI_ERGONOMICS_HPP

#include "adaptui/vec3.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace adaptui {

/// Placements closer than this to an anchor (head or shoulder) have no
/// defined direction; their objective evaluates to pi.
inline constexpr double kDegeneracyRadius = 0.01;

/// Anthropometric frame of the user the element is placed for.
///
/// Positions are in meters, directions are unit vectors. The arm objective
/// and reach constraint refer to a single (right) shoulder.
struct UserPose {
    Vec3 head_position;
    Vec3 gaze_forward;
    Vec3 shoulder_position;
    Vec3 arm_rest_direction;
    double arm_length{};

    /// Standing adult: eyes at 1.70 m looking along +z, right shoulder at
    /// (0.20, 1.45, 0), arm hanging along -y, 0.65 m reach.
    static auto standing_default() -> UserPose;

    /// Throws Error{Validation} naming the offending member.
    void validate() const;

    friend auto operator==(UserPose const&, UserPose const&) -> bool = default;
};

enum class Objective {
    NeckAngle,
    ArmAngle,
};

auto objective_id(Objective objective) -> std::string_view;
auto parse_objective(std::string_view id) -> std::optional<Objective>;

/// Upper bound on one objective, in radians.
struct PreferenceConstraint {
    Objective objective{};
    double upper_bound{};

    friend auto operator==(PreferenceConstraint const&, PreferenceConstraint const&) -> bool = default;
};

using ObjectiveVector = std::vector<double>;

struct Candidate {
    Vec3 position;
    ObjectiveVector objectives;
    double reach_violation{};
    double preference_violation{};

    /// Sum of the positive parts of both violations.
    [[nodiscard]] auto total_violation() const noexcept -> double;
    [[nodiscard]] auto feasible() const noexcept -> bool { return total_violation() <= 0.0; }

    friend auto operator==(Candidate const&, Candidate const&) -> bool = default;
};

/// Placement problem for one UI element: pose, objective order, decision
/// box, and the preference constraints accumulated so far.
class AdaptationProblem {
public:
    explicit AdaptationProblem(UserPose pose,
                               std::vector<Objective> objectives = {Objective::NeckAngle, Objective::ArmAngle});

    [[nodiscard]] auto pose() const noexcept -> UserPose const& { return pose_; }
    [[nodiscard]] auto objectives() const noexcept -> std::span<Objective const> { return objectives_; }
    [[nodiscard]] auto objective_count() const noexcept -> std::size_t { return objectives_.size(); }
    [[nodiscard]] auto bounds() const noexcept -> Box const& { return bounds_; }
    [[nodiscard]] auto constraints() const noexcept -> std::span<PreferenceConstraint const> { return constraints_; }

    /// Index of `objective` in the problem's objective order, if present.
    [[nodiscard]] auto objective_index(Objective objective) const -> std::optional<std::size_t>;

    /// Replaces the constraint on the same objective if one exists.
    void set_constraint(PreferenceConstraint constraint);
    void set_constraints(std::vector<PreferenceConstraint> constraints);

    friend auto operator==(AdaptationProblem const&, AdaptationProblem const&) -> bool = default;

private:
    UserPose pose_;
    std::vector<Objective> objectives_;
    Box bounds_;
    std::vector<PreferenceConstraint> constraints_;
};

/// Angle between the neutral line of sight and the head-to-element line.
/// Throws Error{DegeneratePosition} within kDegeneracyRadius of the head.
auto neck_angle(UserPose const& pose, Vec3 p) -> double;

/// Angle between the resting arm and the shoulder-to-element line.
/// Throws Error{DegeneratePosition} within kDegeneracyRadius of the shoulder.
auto arm_angle(UserPose const& pose, Vec3 p) -> double;

/// Distance beyond arm's reach; <= 0 means reachable.
auto reach_violation(UserPose const& pose, Vec3 p) -> double;

auto objective_value(UserPose const& pose, Objective objective, Vec3 p) -> double;

/// Evaluates a placement. Degenerate positions score pi rather than throwing.
/// Throws Error{OutOfBounds} outside the decision box.
auto evaluate(AdaptationProblem const& problem, Vec3 p) -> Candidate;

} // namespace adaptui

#endif
