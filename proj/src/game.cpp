#include "matchgames/game.hpp"

#include "matchgames/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace matchgames {

Game::Game(std::size_t num_questions, std::size_t num_answers, std::vector<bool> table,
           std::vector<std::vector<Vertex>> answer_labels)
    : nq_(num_questions), na_(num_answers), table_(std::move(table)), labels_(std::move(answer_labels)) {
    if (table_.size() != nq_ * nq_ * na_ * na_) throw InputError("game table has the wrong size");
    if (!labels_.empty() && labels_.size() != na_) throw InputError("answer label count mismatch");
}

namespace {

// Shared predicate of the matching games: both answers cover their question,
// and intersecting answers must coincide.
template <class Covers, class Meets>
Game matching_game(std::size_t nq, std::size_t na, Covers covers, Meets meets,
                   std::vector<std::vector<Vertex>> labels) {
    std::vector<bool> table(nq * nq * na * na, false);
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y)
            for (std::size_t a = 0; a < na; ++a) {
                if (!covers(a, x)) continue;
                for (std::size_t b = 0; b < na; ++b) {
                    if (!covers(b, y)) continue;
                    if (a == b || !meets(a, b)) table[((x * nq + y) * na + a) * na + b] = true;
                }
            }
    return Game(nq, na, std::move(table), std::move(labels));
}

}  // namespace

Game bpm_game(const BipartiteGraph& g) {
    std::vector<std::vector<Vertex>> labels;
    for (const auto& e : g.edges()) labels.push_back({e.left, e.right});
    return matching_game(
        g.num_left(), g.num_edges(), [&](std::size_t a, std::size_t x) { return g.edge(a).left == x; },
        [&](std::size_t a, std::size_t b) {
            return g.edge(a).left == g.edge(b).left || g.edge(a).right == g.edge(b).right;
        },
        std::move(labels));
}

Game pm_game(const Graph& g) {
    std::vector<std::vector<Vertex>> labels;
    for (const auto& e : g.edges()) labels.push_back({e.u, e.v});
    return matching_game(
        g.num_vertices(), g.num_edges(), [&](std::size_t a, std::size_t x) { return g.edge(a).contains(x); },
        [&](std::size_t a, std::size_t b) { return g.edge(a).meets(g.edge(b)); }, std::move(labels));
}

Game fpm_game(const Graph& g) { return bpm_game(double_cover(g)); }

Game hyper_pm_game(const Hypergraph& h) {
    return matching_game(
        h.num_vertices(), h.num_edges(), [&](std::size_t a, std::size_t x) { return h.contains(a, x); },
        [&](std::size_t a, std::size_t b) { return h.intersect(a, b); }, h.edges());
}

Game iso_constrained_game(const Graph& g, const Graph& h, const BipartiteGraph& c) {
    if (c.num_left() != g.num_vertices() || c.num_right() != h.num_vertices())
        throw InputError("constraint graph dimensions do not match the two graphs");
    const std::size_t nq = g.num_vertices(), na = h.num_vertices();
    std::vector<bool> table(nq * nq * na * na, false);
    for (std::size_t x1 = 0; x1 < nq; ++x1)
        for (std::size_t x2 = 0; x2 < nq; ++x2)
            for (std::size_t y1 = 0; y1 < na; ++y1) {
                if (!c.edge_index(x1, y1)) continue;
                for (std::size_t y2 = 0; y2 < na; ++y2) {
                    if (!c.edge_index(x2, y2)) continue;
                    bool ok;
                    if (x1 == x2)
                        ok = y1 == y2;
                    else if (g.adjacent(x1, x2))
                        ok = h.adjacent(y1, y2);
                    else
                        ok = y1 != y2 && !h.adjacent(y1, y2);
                    if (ok) table[((x1 * nq + x2) * na + y1) * na + y2] = true;
                }
            }
    std::vector<std::vector<Vertex>> labels;
    for (Vertex y = 0; y < na; ++y) labels.push_back({y});
    return Game(nq, na, std::move(table), std::move(labels));
}

bool is_synchronous(const Game& game) {
    for (std::size_t x = 0; x < game.num_questions(); ++x)
        for (std::size_t a = 0; a < game.num_answers(); ++a)
            for (std::size_t b = 0; b < game.num_answers(); ++b)
                if (a != b && game.wins(x, x, a, b)) return false;
    return true;
}

bool is_bisynchronous(const Game& game) {
    if (!is_synchronous(game)) return false;
    for (std::size_t x = 0; x < game.num_questions(); ++x)
        for (std::size_t y = 0; y < game.num_questions(); ++y)
            for (std::size_t a = 0; a < game.num_answers(); ++a)
                if (x != y && game.wins(x, y, a, a)) return false;
    return true;
}

bool is_symmetric(const Game& game) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y)
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b)
                    if (game.wins(x, y, a, b) != game.wins(y, x, b, a)) return false;
    return true;
}

void write_game(std::ostream& out, const Game& game) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    out << "game " << nq << ' ' << na << '\n';
    // One line per (x, y, a) holding the bits for b = 0..|A|-1.
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y)
            for (std::size_t a = 0; a < na; ++a) {
                for (std::size_t b = 0; b < na; ++b) out << (game.wins(x, y, a, b) ? '1' : '0');
                out << '\n';
            }
}

Game read_game(std::istream& in) {
    std::string tag;
    std::size_t nq = 0, na = 0;
    if (!(in >> tag >> nq >> na) || tag != "game") throw InputError("bad game header");
    std::vector<bool> table;
    table.reserve(nq * nq * na * na);
    std::string row;
    for (std::size_t r = 0; r < nq * nq * na; ++r) {
        if (!(in >> row) || row.size() != na) throw InputError("bad game table row");
        for (char ch : row) {
            if (ch != '0' && ch != '1') throw InputError("game table must be 0/1");
            table.push_back(ch == '1');
        }
    }
    return Game(nq, na, std::move(table));
}

void write_answer_labels(std::ostream& out, const Game& game) {
    const auto& labels = game.answer_labels();
    for (std::size_t a = 0; a < labels.size(); ++a) {
        out << a;
        for (Vertex v : labels[a]) out << ' ' << v;
        out << '\n';
    }
}

}  // namespace matchgames
