#pragma once

#include "matchgames/correlation.hpp"
#include "matchgames/fractional.hpp"
#include "matchgames/graph.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace matchgames::cli {

using Json = nlohmann::ordered_json;

// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kAbsent = 1, kInputError = 2, kSizeLimit = 3 };

struct Result {
    Json report;
    int code = kOk;
};

struct GlobalOptions {
    bool json = false;
    std::uint64_t seed = 0;
};

// Rendering helpers.
Json edge_json(const Edge& e);
Json biedge_json(const BiEdge& e);
Json fpm_json(const Graph& g, const FractionalMatching& f);
Json correlation_entries(const Correlation& p);
void print_report(const Json& report, bool json);

Result run_analyze(const std::string& path);
Result run_value(const std::string& path, const std::string& game, const std::string& model, bool sync);
Result run_corr_build(const std::string& kind, const std::string& path, const std::string& game,
                      const std::string& out_path);
Result run_corr_verify(const std::string& game_path, const std::string& corr_path, const std::string& game);
Result run_reduce_sharp(const std::string& path);
Result run_sos_k32();
Result run_sos_sync(std::size_t n);
Result run_quantum_demo(const std::string& dump_path);
Result run_quantum_sweep(std::size_t n, std::size_t restarts, std::size_t iterations, std::size_t dim,
                         std::uint64_t seed);
Result run_qpm_verify(const std::string& graph_path, const std::string& cert_path);
Result run_qpm_search(const std::string& graph_path, std::size_t d, std::size_t restarts, std::size_t iterations,
                      std::uint64_t seed, const std::string& out_path);
Result run_explore_half_integral(const std::string& path);

}  // namespace matchgames::cli
