#include "adaptui/ergonomics.hpp"
#include "adaptui/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace adaptui {
namespace {

using testing::random_in_box;
using testing::random_unit;

constexpr double kPi = std::numbers::pi;

auto expect_error(auto&& fn, ErrorCode code)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

// Rodrigues rotation of p about the axis through `origin`.
auto rotate(Vec3 p, Vec3 origin, Vec3 axis, double angle) -> Vec3
{
    auto const v = p - origin;
    auto const k = normalized(axis);
    auto const r = std::cos(angle) * v + std::sin(angle) * cross(k, v) + (dot(k, v) * (1 - std::cos(angle))) * k;
    return origin + r;
}

// Independent angle formula, well conditioned near 0 and pi.
auto angle_between(Vec3 a, Vec3 b) -> double { return std::atan2(norm(cross(a, b)), dot(a, b)); }

TEST(Neck, HandValues)
{
    auto const pose = UserPose::standing_default();
    EXPECT_NEAR(neck_angle(pose, pose.head_position + 0.5 * pose.gaze_forward), 0.0, 1e-12);
    EXPECT_NEAR(neck_angle(pose, pose.head_position + Vec3{0, 0.5, 0}), kPi / 2, 1e-12);
    EXPECT_NEAR(neck_angle(pose, pose.head_position + Vec3{0, 0.5, 0.5}), kPi / 4, 1e-12);
}

TEST(Arm, HandValues)
{
    auto const pose = UserPose::standing_default();
    EXPECT_NEAR(arm_angle(pose, pose.shoulder_position + 0.65 * Vec3{0, -1, 0}), 0.0, 1e-12);
    EXPECT_NEAR(arm_angle(pose, pose.shoulder_position + Vec3{0, 0, 0.5}), kPi / 2, 1e-12);

    Vec3 const rest_hand{0.20, 0.80, 0};
    EXPECT_NEAR(arm_angle(pose, rest_hand), 0.0, 1e-12);
    EXPECT_NEAR(neck_angle(pose, rest_hand), kPi / 2, 1e-12);
}

TEST(Reach, HandValues)
{
    auto const pose = UserPose::standing_default();
    EXPECT_DOUBLE_EQ(reach_violation(pose, pose.shoulder_position), -0.65);
    EXPECT_NEAR(reach_violation(pose, pose.shoulder_position + Vec3{0, 0, 1}), 0.35, 1e-12);
    EXPECT_NEAR(reach_violation(pose, pose.shoulder_position + 0.65 * Vec3{0, -1, 0}), 0.0, 1e-12);
}

TEST(Evaluate, ArmRestExtreme)
{
    AdaptationProblem const problem(UserPose::standing_default());
    auto const c = evaluate(problem, {0.20, 0.80, 0});
    ASSERT_EQ(c.objectives.size(), 2U);
    EXPECT_NEAR(c.objectives[0], kPi / 2, 1e-12);
    EXPECT_NEAR(c.objectives[1], 0.0, 1e-12);
    EXPECT_NEAR(c.reach_violation, 0.0, 1e-12);
    EXPECT_EQ(c.preference_violation, 0.0);
    EXPECT_TRUE(c.feasible() || c.total_violation() < 1e-12);
}

TEST(Evaluate, GazeExtreme)
{
    AdaptationProblem const problem(UserPose::standing_default());
    auto const c = evaluate(problem, {0, 1.70, 0.566});
    EXPECT_NEAR(c.objectives[0], 0.0, 1e-12);
    EXPECT_NEAR(c.objectives[1], std::acos(-0.25 / 0.65), 2e-3);
    EXPECT_NEAR(c.objectives[1], 1.966, 1e-3);
    EXPECT_NEAR(c.reach_violation, 0.0, 1e-3);
}

TEST(Evaluate, DegenerateScoresPi)
{
    auto const pose = UserPose::standing_default();
    AdaptationProblem const problem(pose);
    auto const c = evaluate(problem, pose.shoulder_position);
    EXPECT_EQ(c.objectives[1], kPi);
    expect_error([&] { arm_angle(pose, pose.shoulder_position + Vec3{0.005, 0, 0}); }, ErrorCode::DegeneratePosition);
    expect_error([&] { neck_angle(pose, pose.head_position); }, ErrorCode::DegeneratePosition);
}

TEST(Evaluate, OutOfBounds)
{
    AdaptationProblem const problem(UserPose::standing_default());
    expect_error([&] { evaluate(problem, {0.20, 1.45, 0.66}); }, ErrorCode::OutOfBounds);
    EXPECT_NO_THROW(evaluate(problem, problem.bounds().upper));
    EXPECT_NO_THROW(evaluate(problem, problem.bounds().lower));
}

TEST(Evaluate, PreferenceViolationIsWorstExcess)
{
    AdaptationProblem problem(UserPose::standing_default());
    problem.set_constraints({{Objective::NeckAngle, 1.0}, {Objective::ArmAngle, 0.5}});
    auto const c = evaluate(problem, {0.20, 0.80, 0}); // (pi/2, 0)
    EXPECT_NEAR(c.preference_violation, kPi / 2 - 1.0, 1e-12);
    EXPECT_FALSE(c.feasible());

    problem.set_constraint({Objective::NeckAngle, 2.0});
    EXPECT_EQ(problem.constraints().size(), 2U);
    EXPECT_LT(evaluate(problem, {0.20, 0.80, 0}).preference_violation, 0.0);
}

TEST(Pose, ValidationNamesField)
{
    auto pose = UserPose::standing_default();
    EXPECT_NO_THROW(pose.validate());
    pose.arm_length = 0.0;
    try {
        pose.validate();
        FAIL();
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::Validation);
        EXPECT_EQ(e.field(), "arm_length");
    }
    pose = UserPose::standing_default();
    pose.gaze_forward = {0, 0, 0};
    EXPECT_THROW(pose.validate(), Error);
}

TEST(Properties, MatchesIndependentAngleFormula)
{
    auto const pose = UserPose::standing_default();
    AdaptationProblem const problem(pose);
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        auto const p = random_in_box(rng, problem.bounds());
        if (distance(p, pose.head_position) > kDegeneracyRadius) {
            EXPECT_NEAR(neck_angle(pose, p), angle_between(pose.gaze_forward, p - pose.head_position), 1e-9);
        }
        if (distance(p, pose.shoulder_position) > kDegeneracyRadius) {
            EXPECT_NEAR(arm_angle(pose, p), angle_between(pose.arm_rest_direction, p - pose.shoulder_position), 1e-9);
        }
    }
}

TEST(Properties, TranslationInvariance)
{
    auto const pose = UserPose::standing_default();
    AdaptationProblem const problem(pose);
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        auto const p = random_in_box(rng, problem.bounds());
        Vec3 const t{uniform01(rng) * 10 - 5, uniform01(rng) * 10 - 5, uniform01(rng) * 10 - 5};
        auto moved = pose;
        moved.head_position = pose.head_position + t;
        moved.shoulder_position = pose.shoulder_position + t;
        for (auto o : {Objective::NeckAngle, Objective::ArmAngle}) {
            EXPECT_NEAR(objective_value(pose, o, p), objective_value(moved, o, p + t), 1e-9);
        }
        EXPECT_NEAR(reach_violation(pose, p), reach_violation(moved, p + t), 1e-9);
    }
}

TEST(Properties, RotationAboutReferenceAxis)
{
    auto const pose = UserPose::standing_default();
    AdaptationProblem const problem(pose);
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        auto const p = random_in_box(rng, problem.bounds());
        auto const angle = uniform01(rng) * 2 * kPi;
        auto const neck = objective_value(pose, Objective::NeckAngle, p);
        auto const arm = objective_value(pose, Objective::ArmAngle, p);
        EXPECT_NEAR(objective_value(pose, Objective::NeckAngle,
                                    rotate(p, pose.head_position, pose.gaze_forward, angle)),
                    neck, 1e-9);
        EXPECT_NEAR(objective_value(pose, Objective::ArmAngle,
                                    rotate(p, pose.shoulder_position, pose.arm_rest_direction, angle)),
                    arm, 1e-9);
    }
}

TEST(Properties, ReachIsOneLipschitz)
{
    auto const pose = UserPose::standing_default();
    Rng rng(14);
    for (int i = 0; i < 10000; ++i) {
        Vec3 const p = pose.shoulder_position + (uniform01(rng) * 1.5) * random_unit(rng);
        Vec3 const q = p + (uniform01(rng) * 0.5) * random_unit(rng);
        EXPECT_LE(std::abs(reach_violation(pose, p) - reach_violation(pose, q)), distance(p, q) + 1e-12);
    }
}

TEST(Properties, EvaluateIsDeterministic)
{
    AdaptationProblem const problem(UserPose::standing_default());
    Rng rng(15);
    for (int i = 0; i < 1000; ++i) {
        auto const p = random_in_box(rng, problem.bounds());
        EXPECT_EQ(evaluate(problem, p), evaluate(problem, p));
    }
}

TEST(Objectives, Ids)
{
    EXPECT_EQ(objective_id(Objective::NeckAngle), "neck_angle");
    EXPECT_EQ(parse_objective("arm_angle"), Objective::ArmAngle);
    EXPECT_FALSE(parse_objective("elbow").has_value());
}

} // namespace
} // namespace adaptui
