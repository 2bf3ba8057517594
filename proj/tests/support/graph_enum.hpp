#pragma once

// Test support: isomorphism classes of small graphs via canonical labelling
// (colour refinement plus individualisation), and a few brute-force oracles.

#include "matchgames/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace matchgames::testing {

using AdjMatrix = std::vector<std::vector<bool>>;

inline AdjMatrix adjacency(const Graph& g) {
    AdjMatrix a(g.num_vertices(), std::vector<bool>(g.num_vertices(), false));
    for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
    return a;
}

inline Graph from_adjacency(const AdjMatrix& a) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = u + 1; v < a.size(); ++v)
            if (a[u][v]) edges.push_back({u, v});
    return Graph(a.size(), std::move(edges));
}

namespace detail {

using Partition = std::vector<std::vector<std::size_t>>;

inline Partition refine(const AdjMatrix& a, Partition p) {
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> cell_of(a.size());
        for (std::size_t c = 0; c < p.size(); ++c)
            for (auto v : p[c]) cell_of[v] = c;
        Partition next;
        for (const auto& cell : p) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
            for (auto v : cell) {
                std::vector<std::size_t> sig(p.size(), 0);
                for (std::size_t w = 0; w < a.size(); ++w)
                    if (a[v][w]) ++sig[cell_of[w]];
                groups[sig].push_back(v);
            }
            if (groups.size() > 1) changed = true;
            for (auto& [sig, members] : groups) next.push_back(members);
        }
        p = std::move(next);
    }
    return p;
}

inline std::uint64_t code_of(const AdjMatrix& a, const std::vector<std::size_t>& order) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j) code = code << 1 | (a[order[i]][order[j]] ? 1 : 0);
    return code;
}

inline void search(const AdjMatrix& a, const Partition& p, std::uint64_t& best, bool& have) {
    auto it = std::find_if(p.begin(), p.end(), [](const auto& c) { return c.size() > 1; });
    if (it == p.end()) {
        std::vector<std::size_t> order;
        for (const auto& c : p) order.push_back(c[0]);
        auto code = code_of(a, order);
        if (!have || code > best) best = code, have = true;
        return;
    }
    const std::size_t idx = static_cast<std::size_t>(it - p.begin());
    for (auto v : p[idx]) {
        Partition q;
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c != idx) {
                q.push_back(p[c]);
                continue;
            }
            q.push_back({v});
            std::vector<std::size_t> rest;
            for (auto w : p[c])
                if (w != v) rest.push_back(w);
            q.push_back(rest);
        }
        search(a, refine(a, std::move(q)), best, have);
    }
}

}  // namespace detail

// Canonical code, equal for two graphs exactly when they are isomorphic (n <= 11).
inline std::uint64_t canonical_code(const AdjMatrix& a) {
    detail::Partition p(1);
    for (std::size_t v = 0; v < a.size(); ++v) p[0].push_back(v);
    if (a.empty()) return 0;
    std::uint64_t best = 0;
    bool have = false;
    detail::search(a, detail::refine(a, p), best, have);
    return best;
}

inline bool is_connected(const Graph& g) {
    if (g.num_vertices() == 0) return true;
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : g.neighbors(v))
            if (!seen[w]) seen[w] = true, ++count, stack.push_back(w);
    }
    return count == g.num_vertices();
}

// One representative per isomorphism class on exactly n vertices.
inline std::vector<Graph> all_graphs(std::size_t n) {
    std::vector<AdjMatrix> layer{AdjMatrix{}};
    for (std::size_t k = 1; k <= n; ++k) {
        std::set<std::uint64_t> seen;
        std::vector<AdjMatrix> next;
        for (const auto& base : layer) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
                AdjMatrix a(k, std::vector<bool>(k, false));
                for (std::size_t u = 0; u + 1 < k; ++u)
                    for (std::size_t v = 0; v + 1 < k; ++v) a[u][v] = base[u][v];
                for (std::size_t u = 0; u + 1 < k; ++u)
                    if (mask >> u & 1) a[u][k - 1] = a[k - 1][u] = true;
                if (seen.insert(canonical_code(a)).second) next.push_back(a);
            }
        }
        layer = std::move(next);
    }
    std::vector<Graph> out;
    for (const auto& a : layer) out.push_back(from_adjacency(a));
    return out;
}

inline std::vector<Graph> connected_graphs(std::size_t n) {
    std::vector<Graph> out;
    for (auto& g : all_graphs(n))
        if (is_connected(g)) out.push_back(std::move(g));
    return out;
}

inline std::vector<Graph> connected_graphs_up_to(std::size_t max_n, std::size_t min_n = 1) {
    std::vector<Graph> out;
    for (std::size_t n = min_n; n <= max_n; ++n)
        for (auto& g : connected_graphs(n)) out.push_back(std::move(g));
    return out;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    return a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges() &&
           canonical_code(adjacency(a)) == canonical_code(adjacency(b));
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

inline BipartiteGraph random_bipartite(std::size_t nl, std::size_t nr, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<BiEdge> edges;
    for (Vertex l = 0; l < nl; ++l)
        for (Vertex r = 0; r < nr; ++r)
            if (coin(rng)) edges.push_back({l, r});
    return BipartiteGraph(nl, nr, std::move(edges));
}

// Largest matching by trying every edge subset (|E| small).
inline std::size_t brute_force_matching_size(const Graph& g) {
    const std::size_t m = g.num_edges();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::uint64_t used = 0;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            auto e = g.edge(i);
            std::uint64_t bits = (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
            if (used & bits) ok = false;
            used |= bits;
        }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
    }
    return best;
}

inline std::size_t brute_force_independence(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto& e : g.edges())
            if ((mask >> e.u & 1) && (mask >> e.v & 1)) {
                ok = false;
                break;
            }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
    }
    return best;
}

}  // namespace matchgames::testing
