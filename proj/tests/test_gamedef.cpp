#include "graph_enum.hpp"
#include "matchgames/correlation.hpp"
#include "matchgames/errors.hpp"
#include "matchgames/game.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace matchgames;
using namespace matchgames::testing;

namespace {

Hypergraph fano_plane() {
    return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

}  // namespace

TEST_CASE("bipartite matching game examples") {
    const Game k11 = bpm_game(complete_bipartite(1, 1));
    CHECK(k11.num_questions() == 1);
    CHECK(k11.num_answers() == 1);
    CHECK(k11.wins(0, 0, 0, 0));

    const Game k32 = bpm_game(complete_bipartite(3, 2));
    CHECK(k32.num_questions() == 3);
    CHECK(k32.num_answers() == 6);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b)
                if (k32.wins(x, x, a, b)) CHECK(a == b);

    const Game isolated = bpm_game(BipartiteGraph(2, 1, {{0, 0}}));
    for (std::size_t a = 0; a < isolated.num_answers(); ++a)
        for (std::size_t b = 0; b < isolated.num_answers(); ++b) CHECK_FALSE(isolated.wins(1, 1, a, b));
}

TEST_CASE("perfect matching game examples") {
    CHECK(brute_force_classical(pm_game(complete_graph(2))) == 1);
    const Game c5 = pm_game(cycle_graph(5));
    CHECK(c5.num_questions() == 5);
    CHECK(c5.num_answers() == 5);
    // K3: two distinct questions can only be answered with the edge joining them.
    const Graph k3 = complete_graph(3);
    const Game game = pm_game(k3);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) {
                    const bool expected = k3.edge(a).contains(x) && k3.edge(b).contains(y) && a == b;
                    CHECK(game.wins(x, y, a, b) == expected);
                }
}

TEST_CASE("fractional matching game examples") {
    const BipartiteGraph c4 = double_cover(complete_graph(2));
    CHECK(fpm_game(complete_graph(2)) == bpm_game(c4));
    const Game c5 = fpm_game(cycle_graph(5));
    CHECK(c5.num_questions() == 5);
    CHECK(c5.num_answers() == 10);
    const Game empty = fpm_game(Graph(3, {}));
    CHECK(empty.num_answers() == 0);
}

TEST_CASE("hypergraph matching game examples") {
    CHECK(brute_force_classical(hyper_pm_game(Hypergraph(3, {{0, 1, 2}}))) == 1);
    CHECK(brute_force_classical(hyper_pm_game(Hypergraph(4, {{0, 1}, {2, 3}}))) == 1);
    CHECK(classical_value(hyper_pm_game(fano_plane())).value < 1);
}

TEST_CASE("isomorphism constraint game examples") {
    const Graph k2 = complete_graph(2);
    CHECK(brute_force_classical(iso_constrained_game(k2, k2, complete_bipartite(2, 2))) == 1);
    const Graph e2(2, {});
    CHECK(brute_force_classical(iso_constrained_game(e2, e2, BipartiteGraph(2, 2, {{0, 0}, {1, 0}}))) < 1);
    CHECK(brute_force_classical(iso_constrained_game(k2, k2, BipartiteGraph(2, 2, {{0, 0}, {1, 1}}))) == 1);
    CHECK_THROWS_AS(iso_constrained_game(k2, k2, complete_bipartite(3, 2)), InputError);
}

TEST_CASE("synchronous and bisynchronous scans") {
    CHECK(is_synchronous(bpm_game(complete_bipartite(3, 2))));
    CHECK_FALSE(is_bisynchronous(pm_game(complete_graph(4))));
    const Game all_ones(2, 2, std::vector<bool>(16, true));
    CHECK_FALSE(is_synchronous(all_ones));
}

TEST_CASE("game tables match the definition on every small graph") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const Graph& g : all_graphs(n)) {
            REQUIRE(pm_game(g) == oracle_pm_game(g));
            REQUIRE(fpm_game(g) == oracle_bpm_game(double_cover(g)));
            REQUIRE(hyper_pm_game(as_hypergraph(g)) == oracle_hyper_pm_game(as_hypergraph(g)));
        }
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        const BipartiteGraph b = random_bipartite(1 + rng() % 5, 1 + rng() % 5, 0.5, rng);
        REQUIRE(bpm_game(b) == oracle_bpm_game(b));
    }
    REQUIRE(hyper_pm_game(fano_plane()) == oracle_hyper_pm_game(fano_plane()));
}

TEST_CASE("every matching game is synchronous") {
    std::mt19937_64 rng(37);
    for (std::size_t n = 1; n <= 6; ++n)
        for (const Graph& g : all_graphs(n)) {
            REQUIRE(is_synchronous(pm_game(g)));
            REQUIRE(is_synchronous(fpm_game(g)));
            REQUIRE(is_synchronous(hyper_pm_game(as_hypergraph(g))));
            REQUIRE(fpm_game(g) == bpm_game(double_cover(g)));
            REQUIRE(pm_game(g) == hyper_pm_game(as_hypergraph(g)));
        }
    for (int t = 0; t < 100; ++t) {
        const BipartiteGraph b = random_bipartite(1 + rng() % 5, 1 + rng() % 5, 0.5, rng);
        REQUIRE(is_synchronous(bpm_game(b)));
        const Graph g = random_graph(4, 0.6, rng), h = random_graph(4, 0.6, rng);
        REQUIRE(is_synchronous(iso_constrained_game(g, h, random_bipartite(4, 4, 0.7, rng))));
    }
}

TEST_CASE("matching game on a perfect matching equals the 2-uniform hypergraph game") {
    const Graph m = disjoint_union(complete_graph(2), 3);
    CHECK(pm_game(m) == hyper_pm_game(as_hypergraph(m)));
}

TEST_CASE("game text format round-trips") {
    const Game game = pm_game(cycle_graph(5));
    std::ostringstream out;
    write_game(out, game);
    std::istringstream in(out.str());
    const Game back = read_game(in);
    CHECK(back == game);
    std::ostringstream again;
    write_game(again, back);
    CHECK(again.str() == out.str());
}
