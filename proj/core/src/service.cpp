#include "adaptui/service.hpp"
#include "adaptui/error.hpp"
#include "adaptui/nsga3.hpp"
#include "adaptui/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

namespace adaptui {

using nlohmann::json;

namespace {

auto new_session_id() -> std::string
{
    static constexpr char kHex[] = "0123456789abcdef";
    std::random_device device;
    std::string id;
    for (int i = 0; i < 4; ++i) {
        auto word = device();
        for (int nibble = 0; nibble < 8; ++nibble) {
            id += kHex[word & 0xF];
            word >>= 4;
        }
    }
    return id;
}

auto valid_id(std::string_view id) -> bool
{
    return !id.empty() && id.size() <= 64
        && std::all_of(id.begin(), id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

auto degrees(std::span<double const> radians) -> json
{
    auto out = json::array();
    for (auto r : radians) {
        out.push_back(to_degrees(r));
    }
    return out;
}

auto objective_ids(Session const& s) -> json
{
    auto out = json::array();
    for (auto o : s.problem.objectives()) {
        out.push_back(objective_id(o));
    }
    return out;
}

auto candidate_payload(Candidate const& c) -> json
{
    return json{
        {"position", to_json(c.position)},
        {"objectives", c.objectives},
        {"objectives_deg", degrees(c.objectives)},
        {"reach_violation", c.reach_violation},
        {"preference_violation", c.preference_violation},
        {"feasible", c.feasible()},
    };
}

auto constraints_payload(Session const& s) -> json
{
    auto out = json::array();
    for (auto const& c : s.constraints()) {
        out.push_back(json{
            {"objective", objective_id(c.objective)},
            {"upper_bound", c.upper_bound},
            {"upper_bound_deg", to_degrees(c.upper_bound)},
        });
    }
    return out;
}

auto latest_round(Session const& s) -> Round const&
{
    if (s.rounds.empty()) {
        throw Error(ErrorCode::NoOpenRound, "session has no adaptation round yet");
    }
    return s.rounds.back();
}

void apply_settings(Session& s, json const& settings, bool require_seed)
{
    if (!settings.is_object()) {
        throw Error(ErrorCode::Validation, "config: expected an object", "config");
    }
    for (auto const& [key, value] : settings.items()) {
        if (key != "nsga3" && key != "reduction_k" && key != "tau") {
            throw Error(ErrorCode::Validation, "config." + key + ": unknown key", "config." + key);
        }
    }
    if (settings.contains("nsga3")) {
        merge_json(s.nsga3, settings["nsga3"], require_seed, "config.nsga3");
    }
    if (settings.contains("reduction_k")) {
        if (!settings["reduction_k"].is_number_unsigned()) {
            throw Error(ErrorCode::Validation, "config.reduction_k: expected a positive integer", "config.reduction_k");
        }
        s.reduction_k = settings["reduction_k"].get<std::size_t>();
    }
    if (settings.contains("tau")) {
        if (!settings["tau"].is_number()) {
            throw Error(ErrorCode::Validation, "config.tau: expected a number", "config.tau");
        }
        s.tau = settings["tau"].get<double>();
    }
    s.validate();
    try {
        s.nsga3.validate(s.problem.objective_count());
    } catch (Error const& e) {
        auto const field = "config.nsga3." + e.field().value_or("");
        throw Error(ErrorCode::Validation, field + ": " + e.what(), field);
    }
}

} // namespace

auto to_degrees(double radians) -> double { return radians * 180.0 / std::numbers::pi; }

void ProgressChannel::begin(std::size_t round)
{
    {
        std::lock_guard lock(mutex_);
        ++run_;
        finished_ = false;
        events_.clear();
        events_.push_back(json{{"event", "start"}, {"round", round}});
    }
    changed_.notify_all();
}

void ProgressChannel::publish(GenerationProgress const& progress)
{
    {
        std::lock_guard lock(mutex_);
        events_.push_back(json{
            {"event", "progress"},
            {"generation", progress.generation},
            {"generations", progress.generations},
            {"rank0_size", progress.rank0_size},
        });
    }
    changed_.notify_all();
}

void ProgressChannel::finish(json summary)
{
    {
        std::lock_guard lock(mutex_);
        summary["event"] = "done";
        events_.push_back(std::move(summary));
        finished_ = true;
    }
    changed_.notify_all();
}

auto ProgressChannel::wait(std::size_t run, std::size_t offset, std::chrono::milliseconds timeout) -> Snapshot
{
    std::unique_lock lock(mutex_);
    auto const ready = [&] {
        if (run_ == 0) {
            return false;
        }
        if (run != 0 && run != run_) {
            return true;
        }
        return events_.size() > offset || finished_;
    };
    changed_.wait_for(lock, timeout, ready);

    Snapshot snapshot;
    snapshot.run = run_;
    snapshot.finished = finished_;
    if (run_ == 0) {
        return snapshot;
    }
    // A newer run replaced the one being read; the reader starts over.
    auto const start = (run == 0 || run == run_) ? offset : 0;
    for (auto i = start; i < events_.size(); ++i) {
        snapshot.events.push_back(events_[i]);
    }
    return snapshot;
}

SessionService::SessionService(std::filesystem::path data_dir, ExecutionOptions options)
    : data_dir_(std::move(data_dir))
    , options_(options)
{
    std::error_code ec;
    std::filesystem::create_directories(data_dir_, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create data directory '" + data_dir_.string() + "': " + ec.message());
    }
    for (auto const& entry : std::filesystem::directory_iterator(data_dir_)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") {
            continue;
        }
        auto session = session_from_json(json::parse(read_file(entry.path())));
        auto const id = session.id;
        sessions_.emplace(id, std::make_shared<Slot>(std::move(session)));
    }
}

auto SessionService::slot(std::string_view id) const -> std::shared_ptr<Slot>
{
    std::lock_guard lock(sessions_mutex_);
    auto it = valid_id(id) ? sessions_.find(id) : sessions_.end();
    if (it == sessions_.end()) {
        throw Error(ErrorCode::NotFound, "no session '" + std::string(id) + "'");
    }
    return it->second;
}

void SessionService::persist(Session const& session) const
{
    write_file(data_dir_ / (session.id + ".json"), to_json(session).dump() + "\n");
}

auto SessionService::create_session(UserPose const& pose, json const& settings) -> Session
{
    pose.validate();
    Session session{
        .id = {},
        .problem = AdaptationProblem(pose),
        .nsga3 = {},
        .reduction_k = kDefaultReductionSize,
        .tau = kDefaultTau,
        .rounds = {},
    };
    apply_settings(session, settings, true);

    std::lock_guard lock(sessions_mutex_);
    do {
        session.id = new_session_id();
    } while (sessions_.contains(session.id));
    persist(session);
    sessions_.emplace(session.id, std::make_shared<Slot>(session));
    return session;
}

auto SessionService::session(std::string_view id) const -> Session
{
    auto s = slot(id);
    std::lock_guard lock(s->mutex);
    return s->session;
}

auto SessionService::session_ids() const -> std::vector<std::string>
{
    std::lock_guard lock(sessions_mutex_);
    std::vector<std::string> ids;
    for (auto const& [id, s] : sessions_) {
        ids.push_back(id);
    }
    return ids;
}

auto SessionService::run_adaptation(std::string_view id, json const& overrides) -> Session
{
    auto s = slot(id);
    Session working = [&] {
        std::lock_guard lock(s->mutex);
        if (s->busy) {
            throw Error(ErrorCode::Busy, "an adaptation is already running for this session");
        }
        s->busy = true;
        return s->session;
    }();

    try {
        auto run = working;
        apply_settings(run, overrides, false);
        auto const round = working.rounds.size() + 1;
        s->progress->begin(round);
        auto front = nsga3_run(run.problem, run.nsga3, options_,
                               [&](GenerationProgress const& p) { s->progress->publish(p); });

        auto const configured_k = working.reduction_k;
        working.reduction_k = run.reduction_k;
        auto updated = open_round(std::move(working), std::move(front));
        updated.reduction_k = configured_k;
        persist(updated);
        {
            std::lock_guard lock(s->mutex);
            s->session = updated;
            s->busy = false;
        }
        s->progress->finish(json{{"round", round}, {"front_size", updated.rounds.back().front.size()}});
        return updated;
    } catch (...) {
        std::lock_guard lock(s->mutex);
        s->busy = false;
        throw;
    }
}

auto SessionService::record_selection(std::string_view id, std::string_view candidate) -> Session
{
    auto s = slot(id);
    std::lock_guard lock(s->mutex);
    if (s->busy) {
        throw Error(ErrorCode::Busy, "an adaptation is running for this session");
    }
    auto updated = apply_selection(s->session, candidate);
    persist(updated);
    s->session = std::move(updated);
    return s->session;
}

auto SessionService::progress(std::string_view id) const -> std::shared_ptr<ProgressChannel>
{
    return slot(id)->progress;
}

auto adapt_response_json(Session const& session) -> json
{
    auto const& round = latest_round(session);
    auto candidates = json::array();
    for (std::size_t i = 0; i < round.reduced.size(); ++i) {
        auto const& rc = round.reduced[i];
        auto payload = candidate_payload(round.front[rc.front_index]);
        payload["id"] = candidate_id(round.number, i);
        payload["front_index"] = rc.front_index;
        payload["mu"] = std::isinf(rc.mu) ? json(nullptr) : json(rc.mu);
        payload["is_extreme"] = rc.is_extreme;
        candidates.push_back(std::move(payload));
    }
    auto ranges = json::array();
    auto ranges_deg = json::array();
    for (auto [lo, hi] : round.front.ranges()) {
        ranges.push_back(json::array({lo, hi}));
        ranges_deg.push_back(json::array({to_degrees(lo), to_degrees(hi)}));
    }
    return json{
        {"session", session.id},
        {"round", round.number},
        {"objective_ids", objective_ids(session)},
        {"candidates", candidates},
        {"auto_pick", candidate_id(round.number, round.auto_pick)},
        {"front", {{"size", round.front.size()}, {"ranges", ranges}, {"ranges_deg", ranges_deg}}},
        {"constraints", constraints_payload(session)},
    };
}

auto front_response_json(Session const& session) -> json
{
    auto const& round = latest_round(session);
    auto members = json::array();
    for (auto const& c : round.front.members()) {
        members.push_back(candidate_payload(c));
    }
    return json{
        {"session", session.id},
        {"round", round.number},
        {"objective_ids", objective_ids(session)},
        {"members", members},
    };
}

auto selection_response_json(Session const& session) -> json
{
    auto const& round = latest_round(session);
    return json{
        {"session", session.id},
        {"round", round.number},
        {"selected", round.selection ? json(candidate_id(round.number, *round.selection)) : json(nullptr)},
        {"constraints", constraints_payload(session)},
    };
}

auto error_json(std::string_view code, std::string_view message, std::optional<std::string> const& field) -> json
{
    json out{{"code", code}, {"message", message}};
    if (field) {
        out["field"] = *field;
    }
    return out;
}

} // namespace adaptui
