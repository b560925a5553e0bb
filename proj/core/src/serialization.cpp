#include "adaptui/serialization.hpp"
#include "adaptui/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace adaptui {

using nlohmann::json;

namespace {

auto join(std::string const& parent, std::string_view key) -> std::string
{
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

[[noreturn]] void invalid(std::string const& field, std::string const& message)
{
    throw Error(ErrorCode::Validation, field + ": " + message, field);
}

void require_object(json const& j, std::string const& field)
{
    if (!j.is_object()) {
        invalid(field, "expected an object");
    }
}

void reject_unknown(json const& j, std::initializer_list<std::string_view> keys, std::string const& field)
{
    for (auto const& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            invalid(join(field, key), "unknown key");
        }
    }
}

auto number(json const& j, std::string const& field) -> double
{
    if (!j.is_number()) {
        invalid(field, "expected a number");
    }
    auto const value = j.get<double>();
    if (!std::isfinite(value)) {
        invalid(field, "expected a finite number");
    }
    return value;
}

auto count(json const& j, std::string const& field) -> std::size_t
{
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        invalid(field, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

auto seed(json const& j, std::string const& field) -> std::uint64_t
{
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        invalid(field, "expected an unsigned 64-bit integer");
    }
    return j.get<std::uint64_t>();
}

auto member(json const& j, std::string_view key, std::string const& field) -> json const&
{
    auto it = j.find(key);
    if (it == j.end()) {
        invalid(join(field, key), "missing key");
    }
    return *it;
}

/// +inf has no JSON spelling; it travels as null.
auto unbounded_to_json(double value) -> json { return std::isinf(value) ? json(nullptr) : json(value); }

auto unbounded_from_json(json const& j, std::string const& field) -> double
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : number(j, field);
}

auto parse_double(std::string_view token, std::string const& field) -> double
{
    double value{};
    auto const* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        invalid(field, "malformed number '" + std::string(token) + "'");
    }
    return value;
}

auto split(std::string_view line, char sep) -> std::vector<std::string_view>
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto const pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

auto to_json(Vec3 v) -> json { return json::array({v.x, v.y, v.z}); }

auto vec3_from_json(json const& j, std::string const& field) -> Vec3
{
    if (!j.is_array() || j.size() != 3) {
        invalid(field, "expected [x, y, z]");
    }
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]"), number(j[2], field + "[2]")};
}

auto to_json(UserPose const& pose) -> json
{
    return json{
        {"head_position", to_json(pose.head_position)},
        {"gaze_forward", to_json(pose.gaze_forward)},
        {"shoulder_position", to_json(pose.shoulder_position)},
        {"arm_rest_direction", to_json(pose.arm_rest_direction)},
        {"arm_length", pose.arm_length},
    };
}

auto pose_from_json(json const& j, std::string const& field) -> UserPose
{
    require_object(j, field);
    reject_unknown(j, {"head_position", "gaze_forward", "shoulder_position", "arm_rest_direction", "arm_length"},
                   field);
    UserPose pose{
        .head_position = vec3_from_json(member(j, "head_position", field), join(field, "head_position")),
        .gaze_forward = vec3_from_json(member(j, "gaze_forward", field), join(field, "gaze_forward")),
        .shoulder_position = vec3_from_json(member(j, "shoulder_position", field), join(field, "shoulder_position")),
        .arm_rest_direction
        = vec3_from_json(member(j, "arm_rest_direction", field), join(field, "arm_rest_direction")),
        .arm_length = number(member(j, "arm_length", field), join(field, "arm_length")),
    };
    try {
        pose.validate();
    } catch (Error const& e) {
        auto const path = join(field, e.field().value_or(""));
        throw Error(ErrorCode::Validation, path + ": " + e.what(), path);
    }
    return pose;
}

auto to_json(Nsga3Config const& c) -> json
{
    return json{
        {"population_size", c.population_size},
        {"generations", c.generations},
        {"reference_divisions", c.reference_divisions},
        {"sbx_eta", c.sbx_eta},
        {"sbx_probability", c.sbx_probability},
        {"mutation_eta", c.mutation_eta},
        {"mutation_probability", c.mutation_probability},
        {"seed", c.seed},
    };
}

void merge_json(Nsga3Config& c, json const& j, bool require_seed, std::string const& field)
{
    require_object(j, field);
    reject_unknown(j,
                   {"population_size", "generations", "reference_divisions", "sbx_eta", "sbx_probability",
                    "mutation_eta", "mutation_probability", "seed"},
                   field);
    if (require_seed && !j.contains("seed")) {
        invalid(join(field, "seed"), "missing key");
    }
    auto sizes = std::array<std::pair<char const*, std::size_t*>, 3>{{
        {"population_size", &c.population_size},
        {"generations", &c.generations},
        {"reference_divisions", &c.reference_divisions},
    }};
    for (auto [key, target] : sizes) {
        if (j.contains(key)) {
            *target = count(j[key], join(field, key));
        }
    }
    auto reals = std::array<std::pair<char const*, double*>, 4>{{
        {"sbx_eta", &c.sbx_eta},
        {"sbx_probability", &c.sbx_probability},
        {"mutation_eta", &c.mutation_eta},
        {"mutation_probability", &c.mutation_probability},
    }};
    for (auto [key, target] : reals) {
        if (j.contains(key)) {
            *target = number(j[key], join(field, key));
        }
    }
    if (j.contains("seed")) {
        c.seed = seed(j["seed"], join(field, "seed"));
    }
}

auto to_json(AnnealConfig const& c) -> json
{
    return json{
        {"initial_temperature", c.initial_temperature},
        {"cooling_factor", c.cooling_factor},
        {"cooling_interval", c.cooling_interval},
        {"iterations", c.iterations},
        {"proposal_sigma", c.proposal_sigma},
        {"seed", c.seed},
    };
}

void merge_json(AnnealConfig& c, json const& j, bool require_seed, std::string const& field)
{
    require_object(j, field);
    reject_unknown(j,
                   {"initial_temperature", "cooling_factor", "cooling_interval", "iterations", "proposal_sigma",
                    "seed"},
                   field);
    if (require_seed && !j.contains("seed")) {
        invalid(join(field, "seed"), "missing key");
    }
    if (j.contains("initial_temperature")) {
        c.initial_temperature = number(j["initial_temperature"], join(field, "initial_temperature"));
    }
    if (j.contains("cooling_factor")) {
        c.cooling_factor = number(j["cooling_factor"], join(field, "cooling_factor"));
    }
    if (j.contains("cooling_interval")) {
        c.cooling_interval = count(j["cooling_interval"], join(field, "cooling_interval"));
    }
    if (j.contains("iterations")) {
        c.iterations = count(j["iterations"], join(field, "iterations"));
    }
    if (j.contains("proposal_sigma")) {
        c.proposal_sigma = number(j["proposal_sigma"], join(field, "proposal_sigma"));
    }
    if (j.contains("seed")) {
        c.seed = seed(j["seed"], join(field, "seed"));
    }
}

auto to_json(PreferenceConstraint const& constraint) -> json
{
    return json{{"objective", objective_id(constraint.objective)}, {"upper_bound", constraint.upper_bound}};
}

auto constraint_from_json(json const& j, std::string const& field) -> PreferenceConstraint
{
    require_object(j, field);
    reject_unknown(j, {"objective", "upper_bound"}, field);
    auto const& id = member(j, "objective", field);
    auto objective = id.is_string() ? parse_objective(id.get<std::string>()) : std::nullopt;
    if (!objective) {
        invalid(join(field, "objective"), "unknown objective");
    }
    return {*objective, number(member(j, "upper_bound", field), join(field, "upper_bound"))};
}

auto to_json(Candidate const& c) -> json
{
    return json{
        {"position", to_json(c.position)},
        {"objectives", c.objectives},
        {"reach_violation", c.reach_violation},
        {"preference_violation", c.preference_violation},
    };
}

auto candidate_from_json(json const& j, std::string const& field) -> Candidate
{
    require_object(j, field);
    reject_unknown(j, {"position", "objectives", "reach_violation", "preference_violation"}, field);
    Candidate c;
    c.position = vec3_from_json(member(j, "position", field), join(field, "position"));
    auto const& objectives = member(j, "objectives", field);
    if (!objectives.is_array()) {
        invalid(join(field, "objectives"), "expected an array");
    }
    for (std::size_t m = 0; m < objectives.size(); ++m) {
        c.objectives.push_back(number(objectives[m], join(field, "objectives") + "[" + std::to_string(m) + "]"));
    }
    c.reach_violation = number(member(j, "reach_violation", field), join(field, "reach_violation"));
    c.preference_violation = number(member(j, "preference_violation", field), join(field, "preference_violation"));
    return c;
}

auto to_json(ParetoFront const& front) -> json
{
    auto out = json::array();
    for (auto const& c : front.members()) {
        out.push_back(to_json(c));
    }
    return out;
}

auto front_from_json(json const& j, std::string const& field) -> ParetoFront
{
    if (!j.is_array()) {
        invalid(field, "expected an array of candidates");
    }
    std::vector<Candidate> members;
    for (std::size_t i = 0; i < j.size(); ++i) {
        members.push_back(candidate_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return ParetoFront(std::move(members));
}

auto to_json(Session const& s) -> json
{
    auto objectives = json::array();
    for (auto o : s.problem.objectives()) {
        objectives.push_back(objective_id(o));
    }
    auto constraints = json::array();
    for (auto const& c : s.constraints()) {
        constraints.push_back(to_json(c));
    }
    auto rounds = json::array();
    for (auto const& r : s.rounds) {
        auto reduced = json::array();
        for (auto const& rc : r.reduced) {
            reduced.push_back(
                json{{"front_index", rc.front_index}, {"mu", unbounded_to_json(rc.mu)}, {"is_extreme", rc.is_extreme}});
        }
        rounds.push_back(json{
            {"number", r.number},
            {"front", to_json(r.front)},
            {"reduced", reduced},
            {"auto_pick", r.auto_pick},
            {"selection", r.selection ? json(*r.selection) : json(nullptr)},
        });
    }
    return json{
        {"id", s.id},
        {"pose", to_json(s.pose())},
        {"objectives", objectives},
        {"constraints", constraints},
        {"nsga3", to_json(s.nsga3)},
        {"reduction_k", s.reduction_k},
        {"tau", s.tau},
        {"rounds", rounds},
    };
}

auto session_from_json(json const& j) -> Session
{
    std::string const field = "session";
    require_object(j, field);
    reject_unknown(j, {"id", "pose", "objectives", "constraints", "nsga3", "reduction_k", "tau", "rounds"}, field);

    auto const& id = member(j, "id", field);
    if (!id.is_string()) {
        invalid(join(field, "id"), "expected a string");
    }
    std::vector<Objective> objectives;
    for (auto const& o : member(j, "objectives", field)) {
        auto parsed = o.is_string() ? parse_objective(o.get<std::string>()) : std::nullopt;
        if (!parsed) {
            invalid(join(field, "objectives"), "unknown objective");
        }
        objectives.push_back(*parsed);
    }
    AdaptationProblem problem(pose_from_json(member(j, "pose", field), join(field, "pose")), objectives);
    std::vector<PreferenceConstraint> constraints;
    auto const& cs = member(j, "constraints", field);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        constraints.push_back(constraint_from_json(cs[i], join(field, "constraints") + "[" + std::to_string(i) + "]"));
    }
    problem.set_constraints(std::move(constraints));

    Nsga3Config nsga3;
    merge_json(nsga3, member(j, "nsga3", field), true, join(field, "nsga3"));
    Session s{
        .id = id.get<std::string>(),
        .problem = std::move(problem),
        .nsga3 = nsga3,
        .reduction_k = count(member(j, "reduction_k", field), join(field, "reduction_k")),
        .tau = number(member(j, "tau", field), join(field, "tau")),
        .rounds = {},
    };

    auto const& rounds = member(j, "rounds", field);
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        auto const path = join(field, "rounds") + "[" + std::to_string(i) + "]";
        auto const& rj = rounds[i];
        require_object(rj, path);
        Round r;
        r.number = count(member(rj, "number", path), join(path, "number"));
        r.front = front_from_json(member(rj, "front", path), join(path, "front"));
        for (auto const& rc : member(rj, "reduced", path)) {
            r.reduced.push_back({
                count(member(rc, "front_index", path), join(path, "reduced.front_index")),
                unbounded_from_json(member(rc, "mu", path), join(path, "reduced.mu")),
                member(rc, "is_extreme", path).get<bool>(),
            });
        }
        r.auto_pick = count(member(rj, "auto_pick", path), join(path, "auto_pick"));
        auto const& sel = member(rj, "selection", path);
        if (!sel.is_null()) {
            r.selection = count(sel, join(path, "selection"));
        }
        s.rounds.push_back(std::move(r));
    }
    s.validate();
    return s;
}

auto format_number(double value) -> std::string
{
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

auto front_to_csv(ParetoFront const& front) -> std::string
{
    std::string out = "x,y,z";
    for (std::size_t m = 0; m < front.objective_count(); ++m) {
        out += ",objective_" + std::to_string(m);
    }
    out += ",reach_violation,preference_violation\n";
    for (auto const& c : front.members()) {
        out += format_number(c.position.x) + "," + format_number(c.position.y) + "," + format_number(c.position.z);
        for (auto f : c.objectives) {
            out += "," + format_number(f);
        }
        out += "," + format_number(c.reach_violation) + "," + format_number(c.preference_violation) + "\n";
    }
    return out;
}

auto front_from_csv(std::string_view csv) -> ParetoFront
{
    std::vector<std::string_view> lines;
    for (auto line : split(csv, '\n')) {
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        invalid("csv", "missing header");
    }
    auto const header = split(lines.front(), ',');
    if (header.size() < 6 || header[0] != "x" || header[1] != "y" || header[2] != "z"
        || header[header.size() - 2] != "reach_violation" || header.back() != "preference_violation") {
        invalid("csv", "unexpected header");
    }
    auto const m_count = header.size() - 5;
    for (std::size_t m = 0; m < m_count; ++m) {
        if (header[3 + m] != "objective_" + std::to_string(m)) {
            invalid("csv", "unexpected header column '" + std::string(header[3 + m]) + "'");
        }
    }

    std::vector<Candidate> members;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        auto const field = "csv line " + std::to_string(row + 1);
        auto const cells = split(lines[row], ',');
        if (cells.size() != header.size()) {
            invalid(field, "expected " + std::to_string(header.size()) + " columns");
        }
        Candidate c;
        c.position = {parse_double(cells[0], field), parse_double(cells[1], field), parse_double(cells[2], field)};
        for (std::size_t m = 0; m < m_count; ++m) {
            c.objectives.push_back(parse_double(cells[3 + m], field));
        }
        c.reach_violation = parse_double(cells[3 + m_count], field);
        c.preference_violation = parse_double(cells[4 + m_count], field);
        members.push_back(std::move(c));
    }
    return ParetoFront(std::move(members));
}

void write_file(std::filesystem::path const& path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(ErrorCode::Io, "failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot move '" + tmp.string() + "' into place: " + ec.message());
    }
}

auto read_file(std::filesystem::path const& path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace adaptui
