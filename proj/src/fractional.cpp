#include "matchgames/fractional.hpp"

#include "matchgames/lp.hpp"

#include <functional>

namespace matchgames {

bool is_fractional_perfect_matching(const Graph& g, const FractionalMatching& f) {
    if (f.weights.size() != g.num_edges()) return false;
    for (const auto& w : f.weights)
        if (w < 0 || w > 1) return false;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        Rational s = 0;
        for (std::size_t e : g.incident(x)) s += f.weights[e];
        if (s != 1) return false;
    }
    return true;
}

bool avoids_triangles(const Graph& g, const FractionalMatching& f) {
    for (const auto& t : triangles(g)) {
        Rational s = f.weights[*g.edge_index(t[0], t[1])] + f.weights[*g.edge_index(t[0], t[2])] +
                     f.weights[*g.edge_index(t[1], t[2])];
        if (s > 1) return false;
    }
    return true;
}

namespace {

// Variables f(e) >= 0; the per-vertex equalities already force f(e) <= 1.
LinearProgram fpm_program(const Graph& g) {
    LinearProgram lp(g.num_edges());
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        std::vector<Term> terms;
        for (std::size_t e : g.incident(x)) terms.push_back({e, 1});
        lp.add_constraint(std::move(terms), Relation::Equal, 1);
    }
    return lp;
}

std::optional<FractionalMatching> solve_fpm(const LinearProgram& lp) {
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return FractionalMatching{std::move(res.point)};
}

}  // namespace

std::optional<FractionalMatching> fractional_pm(const Graph& g) { return solve_fpm(fpm_program(g)); }

std::optional<FractionalMatching> triangle_avoiding_fpm(const Graph& g) {
    auto lp = fpm_program(g);
    for (const auto& t : triangles(g))
        lp.add_constraint({{*g.edge_index(t[0], t[1]), 1}, {*g.edge_index(t[0], t[2]), 1}, {*g.edge_index(t[1], t[2]), 1}},
                          Relation::LessEqual, 1);
    return solve_fpm(lp);
}

std::optional<FractionalMatching> half_integral_triangle_avoiding_fpm(const Graph& g) {
    // Work in halves: h(e) in {0, 1, 2}, vertex sums 2, triangle sums <= 2.
    const std::size_t m = g.num_edges();
    std::vector<int> h(m, 0), load(g.num_vertices(), 0);
    const auto tris = triangles(g);
    std::vector<std::vector<std::array<std::size_t, 3>>> tris_of_edge(m);
    for (const auto& t : tris) {
        std::array<std::size_t, 3> ids{*g.edge_index(t[0], t[1]), *g.edge_index(t[0], t[2]), *g.edge_index(t[1], t[2])};
        for (auto id : ids) tris_of_edge[id].push_back(ids);
    }
    std::function<bool(std::size_t)> place = [&](std::size_t e) -> bool {
        if (e == m) {
            for (int l : load)
                if (l != 2) return false;
            return true;
        }
        const auto& edge = g.edge(e);
        for (int v = 2; v >= 0; --v) {
            if (load[edge.u] + v > 2 || load[edge.v] + v > 2) continue;
            h[e] = v;
            bool ok = true;
            for (const auto& ids : tris_of_edge[e])
                if (h[ids[0]] + h[ids[1]] + h[ids[2]] > 2) ok = false;
            // A vertex whose last incident edge is e must be saturated now.
            for (Vertex x : {edge.u, edge.v})
                if (g.incident(x).back() == e && load[x] + v != 2) ok = false;
            if (ok) {
                load[edge.u] += v;
                load[edge.v] += v;
                if (place(e + 1)) return true;
                load[edge.u] -= v;
                load[edge.v] -= v;
            }
            h[e] = 0;
        }
        return false;
    };
    for (Vertex x = 0; x < g.num_vertices(); ++x)
        if (g.incident(x).empty()) return std::nullopt;
    if (!place(0)) return std::nullopt;
    FractionalMatching f;
    for (int v : h) {
        f.weights.emplace_back(v, 2);
        f.weights.back().canonicalize();
    }
    return f;
}

}  // namespace matchgames
