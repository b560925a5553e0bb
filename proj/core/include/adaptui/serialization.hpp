#ifndef ADAPTUI_SERIALIZATION_HPP
#define ADAPTUI_SERIALIZATION_HPP

#include "adaptui/annealing.hpp"
#include "adaptui/ergonomics.hpp"
#include "adaptui/nsga3.hpp"
#include "adaptui/pareto.hpp"
#include "adaptui/selection.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace adaptui {

// JSON readers throw Error{Validation} with `field` set to the dotted path of
// the offending key. Unknown keys are rejected.

auto to_json(Vec3 v) -> nlohmann::json;
auto vec3_from_json(nlohmann::json const& j, std::string const& field) -> Vec3;

auto to_json(UserPose const& pose) -> nlohmann::json;
/// Validates the pose after parsing.
auto pose_from_json(nlohmann::json const& j, std::string const& field = "pose") -> UserPose;

auto to_json(Nsga3Config const& config) -> nlohmann::json;
/// Overwrites only the keys present in `j`; "seed" is mandatory when
/// `require_seed` is set.
void merge_json(Nsga3Config& config, nlohmann::json const& j, bool require_seed, std::string const& field = "nsga3");

auto to_json(AnnealConfig const& config) -> nlohmann::json;
void merge_json(AnnealConfig& config, nlohmann::json const& j, bool require_seed, std::string const& field = "anneal");

auto to_json(PreferenceConstraint const& constraint) -> nlohmann::json;
auto constraint_from_json(nlohmann::json const& j, std::string const& field) -> PreferenceConstraint;

auto to_json(Candidate const& candidate) -> nlohmann::json;
auto candidate_from_json(nlohmann::json const& j, std::string const& field) -> Candidate;

/// JSON array of candidate objects.
auto to_json(ParetoFront const& front) -> nlohmann::json;
auto front_from_json(nlohmann::json const& j, std::string const& field) -> ParetoFront;

/// Full session history.
auto to_json(Session const& session) -> nlohmann::json;
auto session_from_json(nlohmann::json const& j) -> Session;

/// Shortest decimal that round-trips the double exactly.
auto format_number(double value) -> std::string;

/// Header x,y,z,objective_0..objective_{M-1},reach_violation,preference_violation.
auto front_to_csv(ParetoFront const& front) -> std::string;
/// Throws Error{Validation} on malformed input.
auto front_from_csv(std::string_view csv) -> ParetoFront;

/// Writes via a temporary file and rename. Throws Error{Io}.
void write_file(std::filesystem::path const& path, std::string_view content);
auto read_file(std::filesystem::path const& path) -> std::string;

} // namespace adaptui

#endif
