#ifndef ADAPTUI_HARNESS_HPP
#define ADAPTUI_HARNESS_HPP

#include "adaptui/annealing.hpp"
#include "adaptui/ergonomics.hpp"
#include "adaptui/nsga3.hpp"
#include "adaptui/parallel.hpp"
#include "adaptui/pareto.hpp"
#include "adaptui/selection.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adaptui {

/// Objective-space tolerance (radians, per component) for calling a
/// weighted-sum result "the arm extreme".
inline constexpr double kCollapseTolerance = 0.02;

inline constexpr int kDefaultOracleResolution = 96;

struct SimulationConfig {
    UserPose pose = UserPose::standing_default();
    Nsga3Config nsga3;
    AnnealConfig anneal;
    /// Applied to raw radians, in objective order (neck, arm).
    std::vector<double> weights{0.5, 0.5};
    int oracle_resolution{kDefaultOracleResolution};
    std::size_t reduction_k{kDefaultReductionSize};
    double tau{kDefaultTau};

    /// Throws Error{Validation} naming the offending key.
    void validate() const;

    friend auto operator==(SimulationConfig const&, SimulationConfig const&) -> bool = default;
};

/// Schema { pose, nsga3, anneal, weights, oracle_resolution, reduction_k, tau };
/// every key optional, nested config objects must carry their seed.
auto simulation_config_from_json(nlohmann::json const& j) -> SimulationConfig;
auto to_json(SimulationConfig const& config) -> nlohmann::json;
auto load_simulation_config(std::filesystem::path const& path) -> SimulationConfig;

/// Single-objective optima of the two angle objectives, found by a fine 1-D
/// scan along the zero-angle rays (resting arm from the shoulder, line of
/// sight from the head) clipped to the reach sphere.
struct ReferenceExtremes {
    /// (neck, arm) at the arm-angle optimum.
    ObjectiveVector arm_extreme;
    /// (neck, arm) at the neck-angle optimum; empty if the gaze ray never
    /// enters the reach sphere.
    ObjectiveVector neck_extreme;
};

/// Requires the objective order (neck_angle, arm_angle).
auto reference_extremes(AdaptationProblem const& problem) -> ReferenceExtremes;

/// Index of the candidate minimizing sum_m w_m (f_m - offset_m) / scale_m,
/// ties broken by lexicographic objective vector.
auto scalarized_argmin(std::span<Candidate const> candidates, std::span<double const> weights,
                       std::span<double const> offset = {}, std::span<double const> scale = {}) -> std::size_t;

struct ExtremeCoverage {
    std::string name;
    ObjectiveVector target;
    /// Euclidean objective-space distance from the nearest front member.
    double distance{};
};

struct SimulationTimings {
    double oracle_seconds{};
    double nsga3_seconds{};
    double anneal_seconds{};
};

struct SimulationReport {
    std::filesystem::path oracle_front_file;
    std::filesystem::path nsga3_front_file;
    std::filesystem::path weighted_sum_file;
    std::filesystem::path report_file;

    ParetoFront oracle_front;
    ParetoFront nsga3_front;
    /// Annealing result under config.weights on raw radians.
    Candidate weighted_sum;
    double weighted_sum_cost{};
    /// Exact grid minimizers of the same weights, raw and range-normalized.
    Candidate grid_argmin_raw;
    Candidate grid_argmin_normalized;

    double igd{};
    /// Weighted-sum result within kCollapseTolerance of the oracle arm extreme.
    bool collapse_check{};
    ObjectiveVector oracle_arm_extreme;
    std::vector<ExtremeCoverage> extreme_coverage;
    std::vector<ReducedCandidate> reduced;
    SimulationTimings timings;
};

/// Report as JSON. Everything outside "timings" is a function of the config.
auto to_json(SimulationReport const& report, SimulationConfig const& config) -> nlohmann::json;

/// Oracle front, NSGA-III front, annealed weighted sum, comparison metrics.
/// Writes oracle_front.csv, nsga3_front.csv, weighted_sum.json and
/// report.json into `out_dir` (created if missing). Throws Error{Io}.
auto run_simulation(SimulationConfig const& config, std::filesystem::path const& out_dir,
                    ExecutionOptions const& options = {}) -> SimulationReport;

/// Same computation without touching the filesystem.
auto simulate(SimulationConfig const& config, ExecutionOptions const& options = {}) -> SimulationReport;

struct SweepPoint {
    /// Weight on the (normalized) neck objective; the arm gets 1 - weight.
    double weight{};
    std::size_t front_index{};
    ObjectiveVector objectives;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    ParetoFront oracle_front;
    /// Distinct front members returned by any weight.
    std::vector<std::size_t> reachable;
};

/// Scans weights i/(steps-1) over the oracle front normalized by its own
/// ranges. Throws Error{InvalidConfiguration} for steps < 3.
auto sweep_weights(SimulationConfig const& config, std::size_t steps, ExecutionOptions const& options = {})
    -> SweepResult;

/// Sweep over an already computed oracle front.
auto sweep_front(ParetoFront const& oracle, std::size_t steps) -> SweepResult;

auto to_json(SweepResult const& sweep) -> nlohmann::json;

} // namespace adaptui

#endif
