#include "graph_enum.hpp"
#include "matchgames/correlation.hpp"
#include "matchgames/errors.hpp"
#include "matchgames/fractional.hpp"
#include "matchgames/game.hpp"
#include "matchgames/nonsignaling.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace matchgames;
using namespace matchgames::testing;

namespace {

Game random_game(std::size_t nq, std::size_t na, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<bool> table(nq * nq * na * na);
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = coin(rng);
    return Game(nq, na, table);
}

Correlation uniform(std::size_t nq, std::size_t na) {
    Correlation p(nq, na);
    for (auto& v : p.table()) v = Rational(1, na * na);
    return p;
}

}  // namespace

TEST_CASE("winning probability examples") {
    const Graph k4 = complete_graph(4);
    // Matching {01, 23}: edges 0 and 5 in lexicographic order.
    const DeterministicStrategy s{{0, 0, 5, 5}, {0, 0, 5, 5}};
    CHECK(winning_probability(pm_game(k4), deterministic_correlation(s, k4.num_edges())) == 1);
    CHECK(winning_probability(bpm_game(complete_bipartite(1, 1)), uniform(1, 1)) == 1);
}

TEST_CASE("correlation property scans") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const std::size_t nq = 1 + rng() % 4, na = 1 + rng() % 4;
        DeterministicStrategy s;
        for (std::size_t x = 0; x < nq; ++x) {
            s.alice.push_back(rng() % na);
            s.bob.push_back(rng() % na);
        }
        const Correlation p = deterministic_correlation(s, na);
        REQUIRE(is_valid(p));
        REQUIRE(is_nonsignaling(p));
    }
    // Alice's marginal on question 0 depends on Bob's question.
    Correlation p(2, 2);
    p(0, 0, 0, 0) = 1;
    p(0, 1, 1, 0) = 1;
    p(1, 0, 0, 0) = 1;
    p(1, 1, 0, 0) = 1;
    CHECK(is_valid(p));
    CHECK_FALSE(is_nonsignaling(p));

    Correlation bad(1, 2);
    bad(0, 0, 0, 0) = Rational(1, 2);
    CHECK_FALSE(is_valid(bad));
}

TEST_CASE("synchronous correlation scans") {
    const DeterministicStrategy same{{0, 1}, {0, 1}};
    const Correlation p = deterministic_correlation(same, 2);
    CHECK(is_synchronous_corr(p));
    CHECK(is_bisynchronous_corr(p));
    const DeterministicStrategy collide{{0, 0}, {0, 0}};
    CHECK(is_synchronous_corr(deterministic_correlation(collide, 2)));
    CHECK_FALSE(is_bisynchronous_corr(deterministic_correlation(collide, 2)));
    CHECK_FALSE(is_synchronous_corr(uniform(2, 2)));
}

TEST_CASE("classical value examples") {
    const auto k32 = classical_value(bpm_game(complete_bipartite(3, 2)));
    CHECK(k32.value == Rational(7, 9));
    CHECK(winning_probability(bpm_game(complete_bipartite(3, 2)), deterministic_correlation(k32.best, 6)) ==
          k32.value);
    CHECK(classical_value(bpm_game(complete_bipartite(4, 2))).value == Rational(3, 4));
    CHECK(classical_value(pm_game(complete_graph(2))).value == 1);
}

TEST_CASE("classical value agrees with exhaustive enumeration") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
        const std::size_t nq = 1 + rng() % 3, na = 1 + rng() % 3;
        const Game game = random_game(nq, na, 0.4, rng);
        REQUIRE(classical_value(game).value == brute_force_classical(game));
        REQUIRE(classical_value(game, true).value == brute_force_classical(game, true));
    }
    for (std::size_t n = 2; n <= 4; ++n) {
        const Game game = bpm_game(complete_bipartite(n, 2));
        CHECK(classical_value(game).value == brute_force_classical(game));
    }
    CHECK(classical_value(pm_game(cycle_graph(5))).value == brute_force_classical(pm_game(cycle_graph(5))));
}

TEST_CASE("classical value respects its enumeration cap") {
    ClassicalLimits limits;
    limits.max_assignments = 10;
    CHECK_THROWS_AS(classical_value(pm_game(complete_graph(6)), false, limits), SizeLimitError);
}

TEST_CASE("perfect classical strategies match the combinatorial properties") {
    for (const Graph& g : connected_graphs_up_to(6, 2)) {
        const bool pm = is_perfect(g, maximum_matching(g));
        REQUIRE((classical_value(pm_game(g)).value == 1) == pm);
        REQUIRE((classical_value(pm_game(g), true).value == 1) == pm);
        const bool fpm = fractional_pm(g).has_value();
        REQUIRE((classical_value(fpm_game(g)).value == 1) == fpm);
    }
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        const BipartiteGraph b = random_bipartite(1 + rng() % 5, 1 + rng() % 5, 0.4, rng);
        if (b.num_edges() == 0) continue;
        const bool lpm = std::holds_alternative<BipartiteMatching>(l_perfect_matching(b));
        REQUIRE((classical_value(bpm_game(b)).value == 1) == lpm);
        REQUIRE((classical_value(bpm_game(b), true).value == 1) == lpm);
    }
}

TEST_CASE("nonsignaling value dominates classical value") {
    for (const Graph& g : connected_graphs_up_to(4, 2)) {
        const Game game = pm_game(g);
        REQUIRE(ns_value(game).value >= classical_value(game).value);
    }
    std::mt19937_64 rng(53);
    for (int t = 0; t < 40; ++t) {
        const Game game = random_game(2 + rng() % 2, 2, 0.4, rng);
        REQUIRE(ns_value(game).value >= classical_value(game).value);
    }
}

TEST_CASE("correlation text format round-trips") {
    const auto r = ns_value(pm_game(cycle_graph(5)));
    std::ostringstream out;
    write_correlation(out, r.witness);
    std::istringstream in(out.str());
    const Correlation back = read_correlation(in);
    CHECK(back == r.witness);
    std::ostringstream again;
    write_correlation(again, back);
    CHECK(again.str() == out.str());
}
