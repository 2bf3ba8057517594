#include "matchgames/constructions.hpp"

#include "matchgames/errors.hpp"
#include "matchgames/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace matchgames {

namespace {

// One possible answer of a left vertex: the answer index and its right endpoint.
struct Choice {
    std::size_t answer;
    Vertex right;
};

// Fills the correlation for left vertices that each either answer one forced
// edge or split evenly between two edges.
Correlation left_choice_correlation(std::size_t num_answers, const std::vector<std::vector<Choice>>& choices) {
    const std::size_t nq = choices.size();
    Correlation p(nq, num_answers);
    const Rational half(1, 2), quarter(1, 4);
    for (std::size_t v1 = 0; v1 < nq; ++v1)
        for (std::size_t v2 = 0; v2 < nq; ++v2) {
            const auto& c1 = choices[v1];
            const auto& c2 = choices[v2];
            if (v1 == v2) {
                for (const auto& c : c1) p(v1, v1, c.answer, c.answer) = Rational(1, c1.size());
                continue;
            }
            if (c1.size() == 1 || c2.size() == 1) {
                for (const auto& a : c1)
                    for (const auto& b : c2) p(v1, v2, a.answer, b.answer) = Rational(1, c1.size() * c2.size());
                continue;
            }
            std::vector<Vertex> shared;
            for (const auto& a : c1)
                for (const auto& b : c2)
                    if (a.right == b.right) shared.push_back(a.right);
            for (const auto& a : c1)
                for (const auto& b : c2) {
                    if (shared.empty()) {
                        p(v1, v2, a.answer, b.answer) = quarter;
                        continue;
                    }
                    if (a.right == b.right) continue;
                    bool covers = std::all_of(shared.begin(), shared.end(),
                                              [&](Vertex w) { return w == a.right || w == b.right; });
                    if (covers) p(v1, v2, a.answer, b.answer) = half;
                }
        }
    return p;
}

std::size_t cycle_distance(std::size_t x, std::size_t y, std::size_t n) {
    std::size_t d = x > y ? x - y : y - x;
    return std::min(d, n - d);
}

Correlation cycle_correlation(std::size_t n, bool avoid_common_neighbour) {
    const Graph c = cycle_graph(n);
    std::vector<std::size_t> fwd(n), bwd(n);
    for (std::size_t x = 0; x < n; ++x) {
        fwd[x] = *c.edge_index(x, (x + 1) % n);
        bwd[x] = *c.edge_index((x + n - 1) % n, x);
    }
    Correlation p(n, c.num_edges());
    const Rational half(1, 2), quarter(1, 4);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t d = cycle_distance(x, y, n);
            if (d == 0) {
                p(x, x, fwd[x], fwd[x]) = half;
                p(x, x, bwd[x], bwd[x]) = half;
            } else if (d == 1) {
                p(x, y, fwd[x], bwd[y]) = half;
                p(x, y, bwd[x], fwd[y]) = half;
            } else if (d == 2 && avoid_common_neighbour) {
                p(x, y, fwd[x], fwd[y]) = half;
                p(x, y, bwd[x], bwd[y]) = half;
            } else {
                for (auto a : {fwd[x], bwd[x]})
                    for (auto b : {fwd[y], bwd[y]}) p(x, y, a, b) = quarter;
            }
        }
    return p;
}

void check_odd_cycle_length(std::size_t n) {
    if (n < 5 || n % 2 == 0) throw InputError("odd cycle construction needs odd n >= 5, got " + std::to_string(n));
}

}  // namespace

Correlation ns_left_degree2_corr(const BipartiteGraph& g) {
    std::vector<std::vector<Choice>> choices(g.num_left());
    for (Vertex l = 0; l < g.num_left(); ++l) {
        const auto& inc = g.incident_left(l);
        if (inc.size() != 2)
            throw InputError("left vertex " + std::to_string(l) + " has degree " + std::to_string(inc.size()) +
                             ", expected 2");
        for (auto e : inc) choices[l].push_back({e, g.edge(e).right});
    }
    return left_choice_correlation(g.num_edges(), choices);
}

std::optional<Correlation> ns_from_sharp(const BipartiteGraph& g) {
    auto dec = degree2_decomposition(g);
    if (!dec) return std::nullopt;
    std::vector<std::vector<Choice>> choices(g.num_left());
    for (const auto& pr : dec->matching) choices[pr.left].push_back({*g.edge_index(pr.left, pr.right), pr.right});
    for (const auto& e : dec->degree2.edges()) choices[e.left].push_back({*g.edge_index(e.left, e.right), e.right});
    for (Vertex l = 0; l < g.num_left(); ++l)
        if (choices[l].empty() || choices[l].size() > 2)
            throw std::logic_error("degree-2 decomposition does not partition the left side");
    return left_choice_correlation(g.num_edges(), choices);
}

Correlation ns_odd_cycle_corr(std::size_t n) {
    check_odd_cycle_length(n);
    return cycle_correlation(n, true);
}

Correlation uniform_nonadjacent_cycle_corr(std::size_t n) {
    check_odd_cycle_length(n);
    return cycle_correlation(n, false);
}

Correlation fpm_to_ns_correlation(const Graph& g, const FractionalMatching& f) {
    if (f.weights.size() != g.num_edges()) throw InputError("weight vector does not match the edge count");
    if (!is_fractional_perfect_matching(g, f)) throw InputError("weights are not a fractional perfect matching");
    if (!avoids_triangles(g, f)) throw InputError("weights exceed 1 on some triangle");

    const std::size_t n = g.num_vertices();
    const Rational r = lcm_of_denominators(f.weights);
    std::vector<std::size_t> h(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        mpq_class scaled = f.weights[e] * r;
        h[e] = scaled.get_num().get_ui();
    }
    const std::size_t r_int = r.get_num().get_ui();
    auto weight = [&](Vertex x, Vertex y) -> std::size_t { return h[*g.edge_index(x, y)]; };

    Correlation p(n, g.num_edges());
    for (Vertex x = 0; x < n; ++x)
        for (auto e : g.incident(x)) p(x, x, e, e) = f.weights[e];

    for (Vertex x = 0; x < n; ++x)
        for (Vertex x2 = 0; x2 < n; ++x2) {
            if (x == x2) continue;
            const auto shared = g.edge_index(x, x2);
            const std::size_t k = shared ? h[*shared] : 0;
            if (shared) p(x, x2, *shared, *shared) = f.weights[*shared];

            // Copies (y, i) ordered by vertex then copy index.
            std::vector<Vertex> side_a, side_b;
            for (auto y : g.neighbors(x))
                if (y != x2) side_a.insert(side_a.end(), weight(x, y), y);
            for (auto y : g.neighbors(x2))
                if (y != x) side_b.insert(side_b.end(), weight(x2, y), y);
            if (side_a.size() != r_int - k || side_b.size() != r_int - k)
                throw std::logic_error("copy counts do not match r - k");

            std::vector<BiEdge> edges;
            for (Vertex i = 0; i < side_a.size(); ++i)
                for (Vertex j = 0; j < side_b.size(); ++j)
                    if (side_a[i] != side_b[j]) edges.push_back({i, j});
            auto matched = l_perfect_matching(BipartiteGraph(side_a.size(), side_b.size(), std::move(edges)));
            const auto* m = std::get_if<BipartiteMatching>(&matched);
            if (!m) throw std::logic_error("copy graph has no perfect matching");
            for (const auto& pr : m->pairs) {
                auto ea = *g.edge_index(x, side_a[pr.left]);
                auto eb = *g.edge_index(x2, side_b[pr.right]);
                p(x, x2, ea, eb) += Rational(1, r_int);
            }
        }
    return p;
}

FractionalMatching marginals_to_fpm(const Correlation& p, const Graph& g) {
    if (p.num_questions() != g.num_vertices() || p.num_answers() != g.num_edges())
        throw InputError("correlation shape does not match the perfect matching game");
    if (!is_valid(p)) throw InputError("not a valid correlation: entries must be nonnegative and sum to 1");
    if (!is_nonsignaling(p)) throw InputError("not nonsignaling: a marginal depends on the other question");
    if (winning_probability(pm_game(g), p) != 1) throw InputError("not perfect: winning probability below 1");

    FractionalMatching f;
    f.weights.resize(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edge(e);
        Rational at_u = p.alice_marginal(edge.u, 0, e);
        Rational at_v = p.alice_marginal(edge.v, 0, e);
        if (at_u != at_v)
            throw InputError("marginal symmetry p(xy|x) = p(xy|y) fails on edge " + std::to_string(edge.u) + "-" +
                             std::to_string(edge.v));
        f.weights[e] = at_u;
    }
    if (!is_fractional_perfect_matching(g, f)) throw InputError("marginals do not sum to 1 around every vertex");
    if (!avoids_triangles(g, f)) throw InputError("marginals exceed 1 on some triangle");
    return f;
}

}  // namespace matchgames
