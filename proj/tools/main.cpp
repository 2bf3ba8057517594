#include "commands.hpp"

#include "matchgames/errors.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <stdexcept>

using namespace matchgames;
using namespace matchgames::cli;

int main(int argc, char** argv) {
    CLI::App app{"Perfect-matching nonlocal games: values, correlations, certificates"};
    app.set_version_flag("--version", MATCHGAMES_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_flag("--json", global.json, "Machine-readable JSON output");
    app.add_option("--seed", global.seed, "Seed for randomized harnesses")->capture_default_str();

    std::function<Result()> action;

    std::string file, game_kind, model = "classical", other, out_path, kind;
    bool sync = false;
    std::size_t n = 0, restarts = 200, iterations = 200, dim = 2, d = 0;

    auto* analyze = app.add_subcommand("analyze", "Full matching spectrum of a graph, bipartite graph or hypergraph");
    analyze->add_option("file", file)->required();
    analyze->callback([&] { action = [&] { return run_analyze(file); }; });

    auto* value = app.add_subcommand("value", "Exact game value");
    value->add_option("file", file)->required();
    value->add_option("--game", game_kind)->required()->check(CLI::IsMember({"bpm", "pm", "fpm", "hpm"}));
    value->add_option("--model", model)->capture_default_str()->check(CLI::IsMember({"classical", "ns"}));
    value->add_flag("--sync", sync, "Restrict to synchronous strategies");
    value->callback([&] { action = [&] { return run_value(file, game_kind, model, sync); }; });

    auto* corr = app.add_subcommand("corr", "Build or verify correlations");
    corr->require_subcommand(1);
    auto* build = corr->add_subcommand("build", "Build a perfect nonsignaling correlation");
    build->add_option("kind", kind)->required()->check(CLI::IsMember({"degree2", "sharp", "odd-cycle", "fpm", "lp"}));
    build->add_option("file", file)->required();
    build->add_option("--game", game_kind)->check(CLI::IsMember({"bpm", "pm", "fpm", "hpm"}));
    build->add_option("-o,--output", out_path, "Write the correlation file here");
    build->callback([&] { action = [&] { return run_corr_build(kind, file, game_kind, out_path); }; });
    auto* verify = corr->add_subcommand("verify", "Check a correlation against a game");
    verify->add_option("gamefile", file, "Game file or graph file")->required();
    verify->add_option("corrfile", other)->required();
    verify->add_option("--game", game_kind, "Game built from a graph file")
        ->check(CLI::IsMember({"bpm", "pm", "fpm", "hpm"}));
    verify->callback([&] { action = [&] { return run_corr_verify(file, other, game_kind); }; });

    auto* reduce = app.add_subcommand("reduce", "Graph reductions");
    reduce->require_subcommand(1);
    auto* sharp = reduce->add_subcommand("sharp", "Forced-edge reduction of a bipartite graph");
    sharp->add_option("file", file)->required();
    sharp->callback([&] { action = [&] { return run_reduce_sharp(file); }; });

    auto* sos = app.add_subcommand("sos", "Sum-of-squares checks");
    sos->require_subcommand(1);
    sos->add_subcommand("verify-k32", "K_{3,2} decomposition")->callback([&] { action = [] { return run_sos_k32(); }; });
    auto* sos_sync = sos->add_subcommand("verify-sync", "Synchronous K_{n,2} identity");
    sos_sync->add_option("n", n)->required()->check(CLI::Range(1, 64));
    sos_sync->callback([&] { action = [&] { return run_sos_sync(n); }; });

    auto* quantum = app.add_subcommand("quantum", "Quantum strategies for K_{n,2}");
    quantum->require_subcommand(1);
    auto* demo = quantum->add_subcommand("k32-demo", "Evaluate the optimal K_{3,2} strategy");
    demo->add_option("--dump", out_path, "Write the strategy file here");
    demo->callback([&] { action = [&] { return run_quantum_demo(out_path); }; });
    auto* sweep = quantum->add_subcommand("sweep", "Seesaw search on K_{n,2}");
    sweep->add_option("n", n)->required()->check(CLI::Range(2, 16));
    sweep->add_option("--restarts", restarts)->capture_default_str();
    sweep->add_option("--iterations", iterations)->capture_default_str();
    sweep->add_option("--dim", dim)->capture_default_str()->check(CLI::Range(1, 16));
    sweep->callback([&] { action = [&] { return run_quantum_sweep(n, restarts, iterations, dim, global.seed); }; });

    auto* qpm = app.add_subcommand("qpm", "Quantum perfect matching certificates");
    qpm->require_subcommand(1);
    auto* qverify = qpm->add_subcommand("verify", "Check a projector certificate");
    qverify->add_option("graph", file)->required();
    qverify->add_option("certfile", other)->required();
    qverify->callback([&] { action = [&] { return run_qpm_verify(file, other); }; });
    auto* search = qpm->add_subcommand("search", "Alternating-projection certificate search");
    search->add_option("graph", file)->required();
    search->add_option("d", d)->required()->check(CLI::Range(1, 64));
    search->add_option("--restarts", restarts)->default_val(20);
    search->add_option("--iterations", iterations)->default_val(2000);
    search->add_option("-o,--output", out_path, "Write the certificate file here");
    search->callback([&] { action = [&] { return run_qpm_search(file, d, restarts, iterations, global.seed, out_path); }; });

    auto* explore = app.add_subcommand("explore", "Exploratory checks");
    explore->require_subcommand(1);
    auto* half = explore->add_subcommand("half-integral", "Look for a half-integral triangle-avoiding FPM");
    half->add_option("file", file)->required();
    half->callback([&] { action = [&] { return run_explore_half_integral(file); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        Result r = action();
        r.report["seed"] = global.seed;
        print_report(r.report, global.json);
        return r.code;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << '\n';
        return kSizeLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    }
}
