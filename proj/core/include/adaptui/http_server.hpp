#ifndef ADAPTUI_HTTP_SERVER_HPP
#define ADAPTUI_HTTP_SERVER_HPP

#include "adaptui/service.hpp"

#include <memory>
#include <string>

namespace adaptui {

/// HTTP+JSON front end of a SessionService:
///
///   POST /sessions                 { pose?, config? }          -> 201 session
///   GET  /sessions/{id}                                        -> session history
///   POST /sessions/{id}/adapt      { nsga3?, reduction_k? }    -> candidates
///   GET  /sessions/{id}/front                                  -> latest full front
///   POST /sessions/{id}/select     { candidate_id }            -> constraints
///   GET  /sessions/{id}/events                                 -> server-sent events
///
/// Errors are { code, message, field? } with 400/404/409/422/500 status.
class HttpServer {
public:
    explicit HttpServer(SessionService& service);
    ~HttpServer();
    HttpServer(HttpServer const&) = delete;
    auto operator=(HttpServer const&) -> HttpServer& = delete;

    /// Binds and blocks until stop(). Returns false if binding failed.
    auto listen(std::string const& host, int port) -> bool;

    /// Binds to a free port and returns it (-1 on failure); serve with
    /// listen_after_bind().
    auto bind_any_port(std::string const& host) -> int;
    /// Binds to `port`; false if the address is unavailable.
    auto bind(std::string const& host, int port) -> bool;
    auto listen_after_bind() -> bool;

    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace adaptui

#endif
