#include "adaptui/http_server.hpp"
#include "adaptui/error.hpp"
#include "adaptui/serialization.hpp"

#include <httplib.h>

#include <atomic>

namespace adaptui {

using nlohmann::json;

namespace {

constexpr auto kJson = "application/json";
constexpr auto kSessionPath = R"(/sessions/([A-Za-z0-9]+))";

auto status_for(ErrorCode code) -> int
{
    switch (code) {
    case ErrorCode::NotFound:
        return 404;
    case ErrorCode::StaleSelection:
    case ErrorCode::NoOpenRound:
    case ErrorCode::Busy:
        return 409;
    case ErrorCode::Io:
    case ErrorCode::InfeasibleSearch:
        return 500;
    default:
        return 422;
    }
}

void reply(httplib::Response& res, int status, json const& body)
{
    res.status = status;
    res.set_content(body.dump(), kJson);
}

auto parse_body(httplib::Request const& req) -> json
{
    if (req.body.empty()) {
        return json::object();
    }
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
        throw json::parse_error::create(101, 0, "request body is not valid JSON", nullptr);
    }
    if (!body.is_object()) {
        throw Error(ErrorCode::Validation, "request body must be a JSON object", "body");
    }
    return body;
}

/// Runs `handler`, mapping library errors onto the documented error body.
template <typename Handler>
auto guarded(SessionService& service, Handler handler)
{
    return [&service, handler](httplib::Request const& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (Error const& e) {
            auto body = error_json(to_string(e.code()), e.what(), e.field());
            if (e.code() == ErrorCode::StaleSelection && req.matches.size() > 1) {
                auto const session = service.session(req.matches[1].str());
                body["round"] = session.rounds.empty() ? 0 : session.rounds.back().number;
            }
            reply(res, status_for(e.code()), body);
        } catch (json::exception const& e) {
            reply(res, 400, error_json("bad_request", e.what()));
        } catch (std::exception const& e) {
            reply(res, 500, error_json("internal", e.what()));
        }
    };
}

} // namespace

struct HttpServer::Impl {
    explicit Impl(SessionService& s)
        : service(s)
    {
    }

    SessionService& service;
    httplib::Server server;
    std::shared_ptr<std::atomic<bool>> stopping = std::make_shared<std::atomic<bool>>(false);
};

HttpServer::HttpServer(SessionService& service)
    : impl_(std::make_unique<Impl>(service))
{
    auto& svc = impl_->service;
    auto& server = impl_->server;

    server.Post("/sessions", guarded(svc, [&svc](httplib::Request const& req, httplib::Response& res) {
        auto const body = parse_body(req);
        for (auto const& [key, value] : body.items()) {
            if (key != "pose" && key != "config") {
                throw Error(ErrorCode::Validation, key + ": unknown key", key);
            }
        }
        auto const pose = body.contains("pose") ? pose_from_json(body["pose"], "pose") : UserPose::standing_default();
        auto const session = svc.create_session(pose, body.value("config", json::object()));
        res.set_header("Location", "/sessions/" + session.id);
        reply(res, 201, to_json(session));
    }));

    server.Get(kSessionPath, guarded(svc, [&svc](httplib::Request const& req, httplib::Response& res) {
        reply(res, 200, to_json(svc.session(req.matches[1].str())));
    }));

    server.Post(std::string(kSessionPath) + "/adapt",
                guarded(svc, [&svc](httplib::Request const& req, httplib::Response& res) {
                    auto const session = svc.run_adaptation(req.matches[1].str(), parse_body(req));
                    reply(res, 200, adapt_response_json(session));
                }));

    server.Get(std::string(kSessionPath) + "/front",
               guarded(svc, [&svc](httplib::Request const& req, httplib::Response& res) {
                   reply(res, 200, front_response_json(svc.session(req.matches[1].str())));
               }));

    server.Post(std::string(kSessionPath) + "/select",
                guarded(svc, [&svc](httplib::Request const& req, httplib::Response& res) {
                    auto const body = parse_body(req);
                    if (!body.contains("candidate_id") || !body["candidate_id"].is_string()) {
                        throw Error(ErrorCode::Validation, "candidate_id: expected a string", "candidate_id");
                    }
                    auto const session
                        = svc.record_selection(req.matches[1].str(), body["candidate_id"].get<std::string>());
                    reply(res, 200, selection_response_json(session));
                }));

    // Streams the current (or next) run's events and closes after "done".
    server.Get(std::string(kSessionPath) + "/events",
               guarded(svc, [&svc, stopping = impl_->stopping](httplib::Request const& req, httplib::Response& res) {
                   auto channel = svc.progress(req.matches[1].str());
                   struct Cursor {
                       std::size_t run{};
                       std::size_t offset{};
                   };
                   auto cursor = std::make_shared<Cursor>();
                   res.set_header("Cache-Control", "no-cache");
                   res.set_chunked_content_provider(
                       "text/event-stream", [channel, cursor, stopping](std::size_t, httplib::DataSink& sink) {
                           if (stopping->load()) {
                               return false;
                           }
                           auto snapshot = channel->wait(cursor->run, cursor->offset, std::chrono::milliseconds(250));
                           if (snapshot.run != cursor->run) {
                               cursor->run = snapshot.run;
                               cursor->offset = 0;
                           }
                           for (auto const& event : snapshot.events) {
                               auto const frame = "event: " + event.value("event", std::string("progress"))
                                   + "\ndata: " + event.dump() + "\n\n";
                               if (!sink.write(frame.data(), frame.size())) {
                                   return false;
                               }
                               ++cursor->offset;
                           }
                           if (snapshot.finished && !snapshot.events.empty()
                               && snapshot.events.back().value("event", "") == "done") {
                               sink.done();
                           } else if (snapshot.events.empty() && !sink.is_writable()) {
                               return false;
                           }
                           return true;
                       });
               }));
}

HttpServer::~HttpServer() { stop(); }

auto HttpServer::listen(std::string const& host, int port) -> bool { return impl_->server.listen(host, port); }

auto HttpServer::bind_any_port(std::string const& host) -> int { return impl_->server.bind_to_any_port(host); }

auto HttpServer::bind(std::string const& host, int port) -> bool { return impl_->server.bind_to_port(host, port); }

auto HttpServer::listen_after_bind() -> bool { return impl_->server.listen_after_bind(); }

void HttpServer::stop()
{
    impl_->stopping->store(true);
    impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

} // namespace adaptui
