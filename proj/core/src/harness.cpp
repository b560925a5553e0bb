#include "adaptui/harness.hpp"
#include "adaptui/error.hpp"
#include "adaptui/serialization.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace adaptui {

using nlohmann::json;

namespace {

constexpr std::size_t kExtremeScanSamples = 20001;

class Stopwatch {
public:
    [[nodiscard]] auto seconds() const -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_neck_arm(AdaptationProblem const& problem)
{
    auto const objectives = problem.objectives();
    if (objectives.size() != 2 || objectives[0] != Objective::NeckAngle || objectives[1] != Objective::ArmAngle) {
        throw Error(ErrorCode::InvalidConfiguration, "expected the objective order (neck_angle, arm_angle)",
                    "objectives");
    }
}

/// Lexicographically smallest (primary, secondary) objective pair along
/// anchor + s * direction for s in [from, to].
auto scan_ray(UserPose const& pose, Vec3 anchor, Vec3 direction, double from, double to, std::size_t primary)
    -> ObjectiveVector
{
    ObjectiveVector best;
    for (std::size_t k = 0; k < kExtremeScanSamples; ++k) {
        auto const s = from + (to - from) * static_cast<double>(k) / static_cast<double>(kExtremeScanSamples - 1);
        auto const p = anchor + s * direction;
        ObjectiveVector f{objective_value(pose, Objective::NeckAngle, p), objective_value(pose, Objective::ArmAngle, p)};
        auto const secondary = 1 - primary;
        if (best.empty() || f[primary] < best[primary]
            || (f[primary] == best[primary] && f[secondary] < best[secondary])) {
            best = f;
        }
    }
    return best;
}

auto chebyshev(std::span<double const> a, std::span<double const> b) -> double
{
    double d = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        d = std::max(d, std::abs(a[m] - b[m]));
    }
    return d;
}

auto euclidean(std::span<double const> a, std::span<double const> b) -> double
{
    double d = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        d += (a[m] - b[m]) * (a[m] - b[m]);
    }
    return std::sqrt(d);
}

auto nearest_distance(ParetoFront const& front, std::span<double const> target) -> double
{
    auto best = std::numeric_limits<double>::infinity();
    for (auto const& c : front.members()) {
        best = std::min(best, euclidean(c.objectives, target));
    }
    return best;
}

auto reduced_to_json(std::vector<ReducedCandidate> const& reduced, ParetoFront const& front) -> json
{
    auto out = json::array();
    for (auto const& rc : reduced) {
        out.push_back(json{
            {"front_index", rc.front_index},
            {"objectives", front[rc.front_index].objectives},
            {"position", to_json(front[rc.front_index].position)},
            {"mu", std::isinf(rc.mu) ? json(nullptr) : json(rc.mu)},
            {"is_extreme", rc.is_extreme},
        });
    }
    return out;
}

} // namespace

void SimulationConfig::validate() const
{
    try {
        pose.validate();
    } catch (Error const& e) {
        auto const field = "pose." + e.field().value_or("");
        throw Error(ErrorCode::Validation, field + ": " + e.what(), field);
    }
    auto const rethrow = [](Error const& e, std::string const& prefix) {
        auto const field = prefix + "." + e.field().value_or("");
        throw Error(ErrorCode::Validation, field + ": " + e.what(), field);
    };
    try {
        nsga3.validate(2);
    } catch (Error const& e) {
        rethrow(e, "nsga3");
    }
    try {
        anneal.validate();
    } catch (Error const& e) {
        rethrow(e, "anneal");
    }
    if (weights.size() != 2) {
        throw Error(ErrorCode::Validation, "weights: expected two weights (neck, arm)", "weights");
    }
    try {
        (void)weighted_sum_cost(std::vector<double>{0.0, 0.0}, weights);
    } catch (Error const& e) {
        throw Error(ErrorCode::Validation, std::string("weights: ") + e.what(), "weights");
    }
    if (oracle_resolution < 2) {
        throw Error(ErrorCode::Validation, "oracle_resolution: must be at least 2", "oracle_resolution");
    }
    if (reduction_k == 0) {
        throw Error(ErrorCode::Validation, "reduction_k: must be positive", "reduction_k");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(ErrorCode::Validation, "tau: must be positive", "tau");
    }
}

auto simulation_config_from_json(json const& j) -> SimulationConfig
{
    if (!j.is_object()) {
        throw Error(ErrorCode::Validation, "config: expected an object", "config");
    }
    static constexpr std::string_view keys[]
        = {"pose", "nsga3", "anneal", "weights", "oracle_resolution", "reduction_k", "tau"};
    for (auto const& [key, value] : j.items()) {
        if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
            throw Error(ErrorCode::Validation, key + ": unknown key", key);
        }
    }

    SimulationConfig config;
    if (j.contains("pose")) {
        config.pose = pose_from_json(j["pose"], "pose");
    }
    if (j.contains("nsga3")) {
        merge_json(config.nsga3, j["nsga3"], true, "nsga3");
    }
    if (j.contains("anneal")) {
        merge_json(config.anneal, j["anneal"], true, "anneal");
    }
    if (j.contains("weights")) {
        auto const& w = j["weights"];
        if (!w.is_array()) {
            throw Error(ErrorCode::Validation, "weights: expected an array", "weights");
        }
        config.weights.clear();
        for (auto const& v : w) {
            if (!v.is_number()) {
                throw Error(ErrorCode::Validation, "weights: expected numbers", "weights");
            }
            config.weights.push_back(v.get<double>());
        }
    }
    if (j.contains("oracle_resolution")) {
        if (!j["oracle_resolution"].is_number_integer()) {
            throw Error(ErrorCode::Validation, "oracle_resolution: expected an integer", "oracle_resolution");
        }
        config.oracle_resolution = j["oracle_resolution"].get<int>();
    }
    if (j.contains("reduction_k")) {
        if (!j["reduction_k"].is_number_unsigned()) {
            throw Error(ErrorCode::Validation, "reduction_k: expected a positive integer", "reduction_k");
        }
        config.reduction_k = j["reduction_k"].get<std::size_t>();
    }
    if (j.contains("tau")) {
        if (!j["tau"].is_number()) {
            throw Error(ErrorCode::Validation, "tau: expected a number", "tau");
        }
        config.tau = j["tau"].get<double>();
    }
    config.validate();
    return config;
}

auto to_json(SimulationConfig const& config) -> json
{
    return json{
        {"pose", to_json(config.pose)},
        {"nsga3", to_json(config.nsga3)},
        {"anneal", to_json(config.anneal)},
        {"weights", config.weights},
        {"oracle_resolution", config.oracle_resolution},
        {"reduction_k", config.reduction_k},
        {"tau", config.tau},
    };
}

auto load_simulation_config(std::filesystem::path const& path) -> SimulationConfig
{
    auto const text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (json::parse_error const& e) {
        throw Error(ErrorCode::Validation, "config: " + std::string(e.what()), "config");
    }
    return simulation_config_from_json(j);
}

auto reference_extremes(AdaptationProblem const& problem) -> ReferenceExtremes
{
    require_neck_arm(problem);
    auto const& pose = problem.pose();
    auto const reach = pose.arm_length * (1.0 - 1e-12);

    ReferenceExtremes out;
    out.arm_extreme = scan_ray(pose, pose.shoulder_position, pose.arm_rest_direction, kDegeneracyRadius, reach, 1);

    // |head + s * gaze - shoulder|^2 = reach^2
    auto const offset = pose.head_position - pose.shoulder_position;
    auto const b = dot(pose.gaze_forward, offset);
    auto const disc = b * b - (dot(offset, offset) - reach * reach);
    if (disc >= 0.0) {
        auto const near = std::max(-b - std::sqrt(disc), kDegeneracyRadius);
        auto const far = -b + std::sqrt(disc);
        if (far >= near) {
            out.neck_extreme = scan_ray(pose, pose.head_position, pose.gaze_forward, near, far, 0);
        }
    }
    return out;
}

auto scalarized_argmin(std::span<Candidate const> candidates, std::span<double const> weights,
                       std::span<double const> offset, std::span<double const> scale) -> std::size_t
{
    if (candidates.empty()) {
        throw Error(ErrorCode::EmptyInput, "no candidates to scalarize");
    }
    auto const cost = [&](Candidate const& c) {
        double sum = 0.0;
        for (std::size_t m = 0; m < weights.size(); ++m) {
            auto f = c.objectives[m];
            if (!offset.empty()) {
                f -= offset[m];
            }
            if (!scale.empty()) {
                f /= scale[m];
            }
            sum += weights[m] * f;
        }
        return sum;
    };
    std::size_t best = 0;
    auto best_cost = cost(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        auto const c = cost(candidates[i]);
        auto const& fi = candidates[i].objectives;
        auto const& fb = candidates[best].objectives;
        if (c < best_cost
            || (c == best_cost && std::lexicographical_compare(fi.begin(), fi.end(), fb.begin(), fb.end()))) {
            best = i;
            best_cost = c;
        }
    }
    return best;
}

auto simulate(SimulationConfig const& config, ExecutionOptions const& options) -> SimulationReport
{
    config.validate();
    AdaptationProblem const problem(config.pose);
    SimulationReport report;

    Stopwatch oracle_clock;
    auto const grid = feasible_grid(problem, config.oracle_resolution, options);
    if (grid.empty()) {
        throw Error(ErrorCode::InfeasibleSearch, "oracle grid holds no feasible placement; raise oracle_resolution");
    }
    report.oracle_front = pareto_filter(grid);
    report.timings.oracle_seconds = oracle_clock.seconds();

    Stopwatch nsga3_clock;
    report.nsga3_front = nsga3_run(problem, config.nsga3, options);
    report.timings.nsga3_seconds = nsga3_clock.seconds();

    Stopwatch anneal_clock;
    report.weighted_sum = anneal_weighted_sum(problem, config.weights, config.anneal);
    report.weighted_sum_cost = weighted_sum_cost(report.weighted_sum.objectives, config.weights);
    report.timings.anneal_seconds = anneal_clock.seconds();

    auto const& oracle = report.oracle_front;
    std::vector<double> offset;
    std::vector<double> scale;
    for (std::size_t m = 0; m < oracle.objective_count(); ++m) {
        offset.push_back(oracle.ranges()[m].first);
        scale.push_back(oracle.span_or_unit(m));
    }
    report.grid_argmin_raw = grid[scalarized_argmin(grid, config.weights)];
    report.grid_argmin_normalized = grid[scalarized_argmin(grid, config.weights, offset, scale)];

    report.igd = igd(report.nsga3_front, oracle);

    auto const arm_only = std::vector<double>{0.0, 1.0};
    report.oracle_arm_extreme = oracle[scalarized_argmin(oracle.members(), arm_only)].objectives;
    report.collapse_check = chebyshev(report.weighted_sum.objectives, report.oracle_arm_extreme) <= kCollapseTolerance;

    auto const extremes = reference_extremes(problem);
    report.extreme_coverage.push_back(
        {"arm_extreme", extremes.arm_extreme, nearest_distance(report.nsga3_front, extremes.arm_extreme)});
    if (!extremes.neck_extreme.empty()) {
        report.extreme_coverage.push_back(
            {"neck_extreme", extremes.neck_extreme, nearest_distance(report.nsga3_front, extremes.neck_extreme)});
    }

    report.reduced = reduce_front(report.nsga3_front, config.reduction_k);
    return report;
}

auto to_json(SimulationReport const& report, SimulationConfig const& config) -> json
{
    auto coverage = json::array();
    for (auto const& c : report.extreme_coverage) {
        coverage.push_back(json{{"name", c.name}, {"target", c.target}, {"distance", c.distance}});
    }
    return json{
        {"config", to_json(config)},
        {"files",
         {
             {"oracle_front", report.oracle_front_file.filename().string()},
             {"nsga3_front", report.nsga3_front_file.filename().string()},
             {"weighted_sum", report.weighted_sum_file.filename().string()},
         }},
        {"oracle_front_size", report.oracle_front.size()},
        {"nsga3_front_size", report.nsga3_front.size()},
        {"igd", report.igd},
        {"weighted_sum",
         {
             {"candidate", to_json(report.weighted_sum)},
             {"cost", report.weighted_sum_cost},
             {"grid_argmin_raw", to_json(report.grid_argmin_raw)},
             {"grid_argmin_normalized", to_json(report.grid_argmin_normalized)},
         }},
        {"oracle_arm_extreme", report.oracle_arm_extreme},
        {"collapse_check", report.collapse_check},
        {"collapse_tolerance", kCollapseTolerance},
        {"extreme_coverage", coverage},
        {"reduced", reduced_to_json(report.reduced, report.nsga3_front)},
        {"timings",
         {
             {"oracle_seconds", report.timings.oracle_seconds},
             {"nsga3_seconds", report.timings.nsga3_seconds},
             {"anneal_seconds", report.timings.anneal_seconds},
         }},
    };
}

auto run_simulation(SimulationConfig const& config, std::filesystem::path const& out_dir,
                    ExecutionOptions const& options) -> SimulationReport
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }

    auto report = simulate(config, options);
    report.oracle_front_file = out_dir / "oracle_front.csv";
    report.nsga3_front_file = out_dir / "nsga3_front.csv";
    report.weighted_sum_file = out_dir / "weighted_sum.json";
    report.report_file = out_dir / "report.json";

    write_file(report.oracle_front_file, front_to_csv(report.oracle_front));
    write_file(report.nsga3_front_file, front_to_csv(report.nsga3_front));
    auto const weighted = json{
        {"weights", config.weights},
        {"candidate", to_json(report.weighted_sum)},
        {"cost", report.weighted_sum_cost},
    };
    write_file(report.weighted_sum_file, weighted.dump(2) + "\n");
    write_file(report.report_file, to_json(report, config).dump(2) + "\n");
    return report;
}

auto sweep_front(ParetoFront const& oracle, std::size_t steps) -> SweepResult
{
    if (steps < 3) {
        throw Error(ErrorCode::InvalidConfiguration, "sweep needs at least 3 steps", "steps");
    }
    if (oracle.objective_count() != 2) {
        throw Error(ErrorCode::InvalidConfiguration, "weight sweep is defined for two objectives", "objectives");
    }
    std::vector<double> offset{oracle.ranges()[0].first, oracle.ranges()[1].first};
    std::vector<double> scale{oracle.span_or_unit(0), oracle.span_or_unit(1)};

    SweepResult result;
    result.oracle_front = oracle;
    for (std::size_t i = 0; i < steps; ++i) {
        auto const w = static_cast<double>(i) / static_cast<double>(steps - 1);
        auto const weights = std::vector<double>{w, 1.0 - w};
        auto const index = scalarized_argmin(oracle.members(), weights, offset, scale);
        result.points.push_back({w, index, oracle[index].objectives});
        if (std::find(result.reachable.begin(), result.reachable.end(), index) == result.reachable.end()) {
            result.reachable.push_back(index);
        }
    }
    std::sort(result.reachable.begin(), result.reachable.end());
    return result;
}

auto sweep_weights(SimulationConfig const& config, std::size_t steps, ExecutionOptions const& options) -> SweepResult
{
    config.validate();
    if (steps < 3) {
        throw Error(ErrorCode::InvalidConfiguration, "sweep needs at least 3 steps", "steps");
    }
    AdaptationProblem const problem(config.pose);
    return sweep_front(brute_force_front(problem, config.oracle_resolution, options), steps);
}

auto to_json(SweepResult const& sweep) -> json
{
    auto points = json::array();
    for (auto const& p : sweep.points) {
        points.push_back(json{{"weight", p.weight}, {"front_index", p.front_index}, {"objectives", p.objectives}});
    }
    return json{
        {"points", points},
        {"oracle_front_size", sweep.oracle_front.size()},
        {"reachable", sweep.reachable},
        {"reachable_count", sweep.reachable.size()},
        {"strict_subset", sweep.reachable.size() < sweep.oracle_front.size()},
    };
}

} // namespace adaptui
