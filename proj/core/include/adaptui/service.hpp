#ifndef ADAPTUI_SERVICE_HPP
#define ADAPTUI_SERVICE_HPP

#include "adaptui/parallel.hpp"
#include "adaptui/selection.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaptui {

/// Generation progress of the most recent adaptation run of one session.
/// Many readers, one writer.
class ProgressChannel {
public:
    void begin(std::size_t round);
    void publish(GenerationProgress const& progress);
    void finish(nlohmann::json summary);

    struct Snapshot {
        std::vector<nlohmann::json> events;
        bool finished{};
        std::size_t run{};
    };

    /// Events of the current run from `offset` on. Blocks up to `timeout`
    /// while nothing new is available. `run` 0 waits for the first run.
    auto wait(std::size_t run, std::size_t offset, std::chrono::milliseconds timeout) -> Snapshot;

private:
    std::mutex mutex_;
    std::condition_variable changed_;
    std::size_t run_{};
    bool finished_{};
    std::vector<nlohmann::json> events_;
};

/// Session lifecycle behind the HTTP API. Sessions are persisted one JSON
/// file per session under the data directory and reloaded on construction.
/// Calls on one session are serialized; an adaptation in flight makes
/// further adapt/select calls on that session fail with Error{Busy}.
class SessionService {
public:
    explicit SessionService(std::filesystem::path data_dir, ExecutionOptions options = {});

    /// `settings`: optional { nsga3 (seed required), reduction_k, tau }.
    /// Throws Error{Validation}.
    auto create_session(UserPose const& pose, nlohmann::json const& settings = nlohmann::json::object()) -> Session;

    /// Throws Error{NotFound}.
    [[nodiscard]] auto session(std::string_view id) const -> Session;
    [[nodiscard]] auto session_ids() const -> std::vector<std::string>;

    /// Runs NSGA-III under the accumulated constraints, reduces the front and
    /// stores the round. `overrides`: optional { nsga3 (partial), reduction_k }
    /// applied to this run only.
    auto run_adaptation(std::string_view id, nlohmann::json const& overrides = nlohmann::json::object()) -> Session;

    /// Delegates to apply_selection; returns the updated session.
    auto record_selection(std::string_view id, std::string_view candidate) -> Session;

    auto progress(std::string_view id) const -> std::shared_ptr<ProgressChannel>;

private:
    struct Slot {
        explicit Slot(Session s)
            : session(std::move(s))
        {
        }

        mutable std::mutex mutex;
        Session session;
        bool busy{};
        std::shared_ptr<ProgressChannel> progress = std::make_shared<ProgressChannel>();
    };

    auto slot(std::string_view id) const -> std::shared_ptr<Slot>;
    void persist(Session const& session) const;

    std::filesystem::path data_dir_;
    ExecutionOptions options_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Slot>, std::less<>> sessions_;
};

// Wire payloads. Angles are radians; *_deg mirrors are for display.

auto adapt_response_json(Session const& session) -> nlohmann::json;
auto front_response_json(Session const& session) -> nlohmann::json;
auto selection_response_json(Session const& session) -> nlohmann::json;
auto error_json(std::string_view code, std::string_view message, std::optional<std::string> const& field = {})
    -> nlohmann::json;

auto to_degrees(double radians) -> double;

} // namespace adaptui

#endif
