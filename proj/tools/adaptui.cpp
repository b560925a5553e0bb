// adaptui: simulation harness, grid oracle and session service.
//
//   adaptui sim run --config cfg.json --out results/
//   adaptui sim sweep --steps 11
//   adaptui oracle --resolution 96 --out oracle.csv
//   adaptui serve --port 8080 --data sessions/
//
// Exit status: 0 success, 2 invalid input, 1 runtime failure.

#include "adaptui/error.hpp"
#include "adaptui/harness.hpp"
#include "adaptui/http_server.hpp"
#include "adaptui/serialization.hpp"
#include "adaptui/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <iostream>
#include <thread>

namespace {

using namespace adaptui;

constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

auto config_or_default(std::string const& path) -> SimulationConfig
{
    return path.empty() ? SimulationConfig{} : load_simulation_config(path);
}

int sim_run(std::string const& config_path, std::string const& out_dir, ExecutionOptions const& options)
{
    auto const config = config_or_default(config_path);
    auto const report = run_simulation(config, out_dir, options);

    auto const& ws = report.weighted_sum.objectives;
    std::printf("oracle front     %zu members (%.2f s)\n", report.oracle_front.size(), report.timings.oracle_seconds);
    std::printf("nsga3 front      %zu members (%.2f s)\n", report.nsga3_front.size(), report.timings.nsga3_seconds);
    std::printf("igd              %.6f\n", report.igd);
    std::printf("weighted sum     neck %.4f  arm %.4f (%.2f s)\n", ws[0], ws[1], report.timings.anneal_seconds);
    std::printf("collapse check   %s\n", report.collapse_check ? "true" : "false");
    for (auto const& e : report.extreme_coverage) {
        std::printf("coverage %-8s %.6f\n", e.name.c_str(), e.distance);
    }
    std::printf("report           %s\n", report.report_file.string().c_str());
    return 0;
}

int sim_sweep(std::string const& config_path, std::size_t steps, ExecutionOptions const& options)
{
    auto const sweep = sweep_weights(config_or_default(config_path), steps, options);
    std::cout << to_json(sweep).dump(2) << '\n';
    return 0;
}

int oracle(std::string const& config_path, int resolution, std::string const& out, ExecutionOptions const& options)
{
    auto const config = config_or_default(config_path);
    AdaptationProblem const problem(config.pose);
    auto const front = brute_force_front(problem, resolution, options);
    auto const csv = front_to_csv(front);
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_file(out, csv);
        std::fprintf(stderr, "%zu members -> %s\n", front.size(), out.c_str());
    }
    return 0;
}

int serve(std::string const& host, int port, std::string const& data_dir, ExecutionOptions const& options)
{
    // Route SIGINT/SIGTERM to sigwait below; worker threads inherit the mask.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    SessionService service(data_dir, options);
    HttpServer server(service);

    if (!server.bind(host, port)) {
        std::fprintf(stderr, "error: cannot listen on %s:%d\n", host.c_str(), port);
        return kExitRuntime;
    }
    std::jthread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    std::fprintf(stderr, "listening on %s:%d, %zu session(s) in %s\n", host.c_str(), port,
                 service.session_ids().size(), data_dir.c_str());

    int received = 0;
    sigwait(&signals, &received);
    server.stop();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-objective UI placement: simulation, oracle and session service"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

    auto* sim = app.add_subcommand("sim", "Simulation harness");
    sim->require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = sim->add_subcommand("run", "Oracle, NSGA-III and weighted-sum comparison");
    run->add_option("--config", config_path, "Simulation config JSON (defaults if omitted)");
    run->add_option("--out", out_dir, "Output directory")->required();

    std::size_t steps = 11;
    auto* sweep = sim->add_subcommand("sweep", "Weighted-sum sweep over the grid oracle front");
    sweep->add_option("--steps", steps, "Number of weights, >= 3")->required();
    sweep->add_option("--config", config_path, "Simulation config JSON");

    int resolution = kDefaultOracleResolution;
    std::string oracle_out;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid Pareto front as CSV");
    oracle_cmd->add_option("--resolution", resolution, "Grid points per axis, >= 2")->required();
    oracle_cmd->add_option("--config", config_path, "Simulation config JSON (pose only is used)");
    oracle_cmd->add_option("--out", oracle_out, "CSV path (stdout if omitted)");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string data_dir;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP+JSON session service");
    serve_cmd->add_option("--port", port, "TCP port")->required()->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--data", data_dir, "Session storage directory")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        auto const code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    ExecutionOptions const options{.threads = static_cast<std::size_t>(threads)};
    try {
        if (*run) {
            return sim_run(config_path, out_dir, options);
        }
        if (*sweep) {
            return sim_sweep(config_path, steps, options);
        }
        if (*oracle_cmd) {
            return oracle(config_path, resolution, oracle_out, options);
        }
        return serve(host, port, data_dir, options);
    } catch (Error const& e) {
        std::fprintf(stderr, "error: %s (%s)\n", e.what(), to_string(e.code()).data());
        switch (e.code()) {
        case ErrorCode::Validation:
        case ErrorCode::InvalidConfiguration:
        case ErrorCode::DegeneratePosition:
        case ErrorCode::OutOfBounds:
            return kExitInvalid;
        default:
            return kExitRuntime;
        }
    } catch (std::exception const& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
