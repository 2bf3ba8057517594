#pragma once

#include "matchgames/graph.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace matchgames {

/// Two-player nonlocal game with a shared question set X, a shared answer
/// set A, a 0/1 verification table V(x, y, a, b), and the uniform
/// distribution on X x X. Immutable after construction.
class Game {
public:
    Game(std::size_t num_questions, std::size_t num_answers, std::vector<bool> table,
         std::vector<std::vector<Vertex>> answer_labels = {});

    std::size_t num_questions() const { return nq_; }
    std::size_t num_answers() const { return na_; }

    // Flat index (x*|X| + y)*|A|^2 + a*|A| + b; shared with correlation tables
    // and nonsignaling LP variables.
    std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
        return ((x * nq_ + y) * na_ + a) * na_ + b;
    }
    bool wins(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const { return table_[index(x, y, a, b)]; }
    const std::vector<bool>& table() const { return table_; }

    // Endpoint list for each answer (edge endpoints, hyperedge members, or the
    // answer vertex itself). May be empty for hand-built games.
    const std::vector<std::vector<Vertex>>& answer_labels() const { return labels_; }

    bool operator==(const Game& o) const { return nq_ == o.nq_ && na_ == o.na_ && table_ == o.table_; }

private:
    std::size_t nq_, na_;
    std::vector<bool> table_;
    std::vector<std::vector<Vertex>> labels_;
};

// Bipartite L-perfect matching game: questions are left vertices, answers edges.
Game bpm_game(const BipartiteGraph& g);
// Perfect matching game on a graph: questions vertices, answers edges.
Game pm_game(const Graph& g);
// Fractional perfect matching game, the bipartite game on the double cover.
Game fpm_game(const Graph& g);
Game hyper_pm_game(const Hypergraph& h);
// Isomorphism game between g and h restricted to the pairs of c.
Game iso_constrained_game(const Graph& g, const Graph& h, const BipartiteGraph& c);

bool is_synchronous(const Game& game);
bool is_bisynchronous(const Game& game);
// V(x, y, a, b) == V(y, x, b, a) for all entries.
bool is_symmetric(const Game& game);

void write_game(std::ostream& out, const Game& game);
Game read_game(std::istream& in);
void write_answer_labels(std::ostream& out, const Game& game);

}  // namespace matchgames
