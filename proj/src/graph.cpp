#include "matchgames/graph.hpp"

#include "matchgames/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace matchgames {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), neighbors_(n), incident_(n), index_(n * n, -1) {
    for (auto& e : edges) {
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw InputError("duplicate edge");
    edges_ = std::move(edges);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [u, v] = edges_[i];
        index_[u * n + v] = index_[v * n + u] = static_cast<int>(i);
        neighbors_[u].push_back(v);
        neighbors_[v].push_back(u);
        incident_[u].push_back(i);
        incident_[v].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

std::optional<std::size_t> Graph::edge_index(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_) return std::nullopt;
    int i = index_[a * n_ + b];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
}

BipartiteGraph::BipartiteGraph(std::size_t n_left, std::size_t n_right, std::vector<BiEdge> edges)
    : n_left_(n_left),
      n_right_(n_right),
      left_adj_(n_left),
      right_adj_(n_right),
      left_incident_(n_left),
      index_(n_left * n_right, -1) {
    for (const auto& e : edges)
        if (e.left >= n_left || e.right >= n_right) throw InputError("bipartite edge endpoint out of range");
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw InputError("duplicate bipartite edge");
    edges_ = std::move(edges);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [l, r] = edges_[i];
        index_[l * n_right + r] = static_cast<int>(i);
        left_adj_[l].push_back(r);
        right_adj_[r].push_back(l);
        left_incident_[l].push_back(i);
    }
}

std::optional<std::size_t> BipartiteGraph::edge_index(Vertex l, Vertex r) const {
    if (l >= n_left_ || r >= n_right_) return std::nullopt;
    int i = index_[l * n_right_ + r];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
}

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> hyperedges) : n_(n) {
    std::set<std::vector<Vertex>> seen;
    for (auto& e : hyperedges) {
        if (e.empty()) throw InputError("empty hyperedge");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw InputError("repeated vertex in hyperedge");
        if (e.back() >= n) throw InputError("hyperedge member out of range");
        if (!seen.insert(e).second) throw InputError("duplicate hyperedge");
    }
    edges_ = std::move(hyperedges);
}

bool Hypergraph::contains(std::size_t e, Vertex x) const {
    return std::binary_search(edges_[e].begin(), edges_[e].end(), x);
}

bool Hypergraph::intersect(std::size_t e, std::size_t f) const {
    const auto &a = edges_[e], &b = edges_[f];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return false;
}

Graph line_graph(const Graph& g) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        for (std::size_t j = i + 1; j < g.num_edges(); ++j)
            if (g.edge(i).meets(g.edge(j))) out.push_back({i, j});
    return Graph(g.num_edges(), std::move(out));
}

Graph hyper_line_graph(const Hypergraph& h) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < h.num_edges(); ++i)
        for (std::size_t j = i + 1; j < h.num_edges(); ++j)
            if (h.intersect(i, j)) out.push_back({i, j});
    return Graph(h.num_edges(), std::move(out));
}

BipartiteGraph double_cover(const Graph& g) {
    std::vector<BiEdge> out;
    for (const auto& e : g.edges()) {
        out.push_back({e.u, e.v});
        out.push_back({e.v, e.u});
    }
    return BipartiteGraph(g.num_vertices(), g.num_vertices(), std::move(out));
}

Graph disjoint_union(const Graph& g, std::size_t copies) {
    if (copies == 0) throw InputError("disjoint_union needs at least one copy");
    const std::size_t n = g.num_vertices();
    std::vector<Edge> out;
    for (std::size_t c = 0; c < copies; ++c)
        for (const auto& e : g.edges()) out.push_back({e.u + c * n, e.v + c * n});
    return Graph(n * copies, std::move(out));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) out.push_back({u, v});
    return Graph(n, std::move(out));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<Edge> out;
    for (Vertex u = 0; u < n; ++u) out.push_back({u, (u + 1) % n});
    return Graph(n, std::move(out));
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> out;
    for (Vertex u = 0; u + 1 < n; ++u) out.push_back({u, u + 1});
    return Graph(n, std::move(out));
}

Graph petersen_graph() {
    std::vector<Edge> out;
    for (Vertex i = 0; i < 5; ++i) {
        out.push_back({i, (i + 1) % 5});
        out.push_back({i, i + 5});
        out.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return Graph(10, std::move(out));
}

BipartiteGraph complete_bipartite(std::size_t n_left, std::size_t n_right) {
    std::vector<BiEdge> out;
    for (Vertex l = 0; l < n_left; ++l)
        for (Vertex r = 0; r < n_right; ++r) out.push_back({l, r});
    return BipartiteGraph(n_left, n_right, std::move(out));
}

Graph as_graph(const BipartiteGraph& g) {
    std::vector<Edge> out;
    for (const auto& e : g.edges()) out.push_back({e.left, g.num_left() + e.right});
    return Graph(g.num_left() + g.num_right(), std::move(out));
}

Hypergraph as_hypergraph(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    for (const auto& e : g.edges()) out.push_back({e.u, e.v});
    return Hypergraph(g.num_vertices(), std::move(out));
}

SharpReduction sharp_reduction(const BipartiteGraph& g, std::span<const Vertex> scan_order) {
    const std::size_t nl = g.num_left(), nr = g.num_right();
    std::vector<Vertex> order(scan_order.begin(), scan_order.end());
    if (order.empty()) {
        order.resize(nl);
        for (Vertex l = 0; l < nl; ++l) order[l] = l;
    } else {
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (Vertex l = 0; l < nl; ++l)
            if (sorted.size() != nl || sorted[l] != l) throw InputError("scan order must permute the left vertices");
    }

    std::vector<bool> left_alive(nl, true), right_alive(nr, true);
    std::vector<std::size_t> degree(nl);
    for (Vertex l = 0; l < nl; ++l) degree[l] = g.left_neighbors(l).size();

    SharpReduction out;
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex l : order) {
            if (!left_alive[l] || degree[l] != 1) continue;
            Vertex r = *std::find_if(g.left_neighbors(l).begin(), g.left_neighbors(l).end(),
                                     [&](Vertex x) { return right_alive[x]; });
            out.forced.push_back({l, r});
            left_alive[l] = false;
            right_alive[r] = false;
            for (Vertex other : g.right_neighbors(r))
                if (left_alive[other]) --degree[other];
            changed = true;
            break;
        }
    }

    std::vector<std::size_t> left_id(nl), right_id(nr);
    for (Vertex l = 0; l < nl; ++l)
        if (left_alive[l]) {
            left_id[l] = out.left_labels.size();
            out.left_labels.push_back(l);
            if (degree[l] == 0) out.lonely_left.push_back(l);
        }
    for (Vertex r = 0; r < nr; ++r)
        if (right_alive[r]) {
            right_id[r] = out.right_labels.size();
            out.right_labels.push_back(r);
        }
    std::vector<BiEdge> kept;
    for (const auto& e : g.edges())
        if (left_alive[e.left] && right_alive[e.right]) kept.push_back({left_id[e.left], right_id[e.right]});
    out.reduced = BipartiteGraph(out.left_labels.size(), out.right_labels.size(), std::move(kept));
    return out;
}

namespace {

struct MatchingSearch {
    const Graph& g;
    std::vector<std::size_t> stack, best;
    std::size_t n;

    void run(std::uint64_t covered, std::size_t remaining) {
        if (stack.size() > best.size()) best = stack;
        if (stack.size() + remaining / 2 <= best.size()) return;
        if (best.size() * 2 == n) return;
        if (remaining < 2) return;
        Vertex v = static_cast<Vertex>(std::countr_one(covered));
        covered |= std::uint64_t{1} << v;
        for (std::size_t ei : g.incident(v)) {
            Vertex w = g.edge(ei).other(v);
            if (covered >> w & 1) continue;
            stack.push_back(ei);
            run(covered | std::uint64_t{1} << w, remaining - 2);
            stack.pop_back();
        }
        run(covered, remaining - 1);
    }
};

}  // namespace

Matching maximum_matching(const Graph& g, const GraphLimits& limits) {
    const std::size_t n = g.num_vertices();
    if (n > limits.max_matching_vertices || n > 63)
        throw SizeLimitError("maximum_matching on " + std::to_string(n) + " vertices");
    MatchingSearch search{g, {}, {}, n};
    search.run(0, n);
    Matching m;
    for (std::size_t ei : search.best) m.edges.push_back(g.edge(ei));
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

bool is_matching(const Graph& g, const std::vector<Edge>& edges) {
    std::vector<bool> used(g.num_vertices(), false);
    for (const auto& e : edges) {
        if (!g.adjacent(e.u, e.v) || used[e.u] || used[e.v]) return false;
        used[e.u] = used[e.v] = true;
    }
    return true;
}

bool is_perfect(const Graph& g, const Matching& m) {
    return is_matching(g, m.edges) && 2 * m.size() == g.num_vertices();
}

std::variant<BipartiteMatching, HallViolator> l_perfect_matching(const BipartiteGraph& g) {
    const std::size_t nl = g.num_left(), nr = g.num_right();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_left(nl, none), match_right(nr, none);
    std::vector<bool> seen;

    std::function<bool(Vertex)> augment = [&](Vertex l) {
        for (Vertex r : g.left_neighbors(l)) {
            if (seen[r]) continue;
            seen[r] = true;
            if (match_right[r] == none || augment(match_right[r])) {
                match_left[l] = r;
                match_right[r] = l;
                return true;
            }
        }
        return false;
    };

    for (Vertex l = 0; l < nl; ++l) {
        seen.assign(nr, false);
        if (augment(l)) continue;
        // Alternating reachability from the exposed vertex l.
        std::vector<bool> in_s(nl, false), in_n(nr, false);
        std::vector<Vertex> queue{l};
        in_s[l] = true;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (Vertex r : g.left_neighbors(queue[head])) {
                if (in_n[r]) continue;
                in_n[r] = true;
                Vertex partner = match_right[r];
                if (partner != none && !in_s[partner]) {
                    in_s[partner] = true;
                    queue.push_back(partner);
                }
            }
        HallViolator hv;
        for (Vertex x = 0; x < nl; ++x)
            if (in_s[x]) hv.left_set.push_back(x);
        for (Vertex r = 0; r < nr; ++r)
            if (in_n[r]) hv.neighbourhood.push_back(r);
        return hv;
    }
    BipartiteMatching m;
    for (Vertex l = 0; l < nl; ++l) m.pairs.push_back({l, match_left[l]});
    return m;
}

std::vector<std::array<Vertex, 3>> triangles(const Graph& g) {
    std::vector<std::array<Vertex, 3>> out;
    for (const auto& e : g.edges())
        for (Vertex w : g.neighbors(e.v))
            if (w > e.v && g.adjacent(e.u, w)) out.push_back({e.u, e.v, w});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct IndependenceSearch {
    std::vector<std::uint64_t> closed;  // N[v] including v
    std::size_t best = 0;

    void run(std::uint64_t candidates, std::size_t size) {
        if (candidates == 0) {
            best = std::max(best, size);
            return;
        }
        if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        // Choose the candidate with the most candidate neighbours to branch on.
        int pick = -1, pick_deg = -1;
        for (std::uint64_t c = candidates; c; c &= c - 1) {
            int v = std::countr_zero(c);
            int d = std::popcount(closed[v] & candidates) - 1;
            if (d == 0) {
                run(candidates & ~(std::uint64_t{1} << v), size + 1);
                return;
            }
            if (d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        run(candidates & ~closed[pick], size + 1);
        run(candidates & ~(std::uint64_t{1} << pick), size);
    }
};

}  // namespace

std::size_t independence_number(const Graph& g, const GraphLimits& limits) {
    const std::size_t n = g.num_vertices();
    if (n > limits.independence_vertices || n > 64)
        throw SizeLimitError("independence_number on " + std::to_string(n) + " vertices");
    IndependenceSearch search;
    search.closed.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        search.closed[v] = std::uint64_t{1} << v;
        for (Vertex w : g.neighbors(v)) search.closed[v] |= std::uint64_t{1} << w;
    }
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    search.run(all, 0);
    return search.best;
}

std::optional<Degree2Decomposition> degree2_decomposition(const BipartiteGraph& g) {
    auto sharp = sharp_reduction(g);
    if (!sharp.lonely_left.empty()) return std::nullopt;
    Degree2Decomposition out;
    out.matching = sharp.forced;
    std::sort(out.matching.begin(), out.matching.end());
    std::vector<BiEdge> kept;
    for (std::size_t l = 0; l < sharp.reduced.num_left(); ++l) {
        const auto& nb = sharp.reduced.left_neighbors(l);
        // nb is ascending; keep the two lowest right indices.
        for (std::size_t k = 0; k < 2; ++k) kept.push_back({sharp.left_labels[l], sharp.right_labels[nb[k]]});
        out.degree2_left.push_back(sharp.left_labels[l]);
    }
    out.degree2 = BipartiteGraph(g.num_left(), g.num_right(), std::move(kept));
    return out;
}

// Text format ---------------------------------------------------------------

void write_graph(std::ostream& out, const AnyGraph& any) {
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Graph>) {
                out << "graph " << g.num_vertices() << '\n';
                for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
            } else if constexpr (std::is_same_v<T, BipartiteGraph>) {
                out << "bipartite " << g.num_left() << ' ' << g.num_right() << '\n';
                for (const auto& e : g.edges()) out << e.left << ' ' << e.right << '\n';
            } else {
                out << "hypergraph " << g.num_vertices() << '\n';
                for (const auto& e : g.edges()) {
                    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
                    out << '\n';
                }
            }
        },
        any);
}

std::string graph_to_string(const AnyGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

namespace {

std::vector<std::size_t> parse_numbers(const std::string& line, std::size_t line_no) {
    std::vector<std::size_t> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": expected non-negative integer, got '" + tok + "'");
        out.push_back(std::stoul(tok));
    }
    return out;
}

}  // namespace

AnyGraph read_graph(std::istream& in) {
    std::string line, kind;
    std::vector<std::size_t> header;
    std::vector<std::vector<std::size_t>> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (kind.empty()) {
            std::istringstream is(line);
            is >> kind;
            std::string rest;
            std::getline(is, rest);
            header = parse_numbers(rest, line_no);
            continue;
        }
        rows.push_back(parse_numbers(line, line_no));
    }
    if (kind == "graph") {
        if (header.size() != 1) throw InputError("graph header needs one count");
        std::vector<Edge> edges;
        for (const auto& r : rows) {
            if (r.size() != 2) throw InputError("graph edge lines need two vertices");
            edges.push_back({r[0], r[1]});
        }
        return Graph(header[0], std::move(edges));
    }
    if (kind == "bipartite") {
        if (header.size() != 2) throw InputError("bipartite header needs two counts");
        std::vector<BiEdge> edges;
        for (const auto& r : rows) {
            if (r.size() != 2) throw InputError("bipartite edge lines need two vertices");
            edges.push_back({r[0], r[1]});
        }
        return BipartiteGraph(header[0], header[1], std::move(edges));
    }
    if (kind == "hypergraph") {
        if (header.size() != 1) throw InputError("hypergraph header needs one count");
        return Hypergraph(header[0], std::move(rows));
    }
    throw InputError(kind.empty() ? "empty graph input" : "unknown graph kind '" + kind + "'");
}

AnyGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_graph(in);
}

}  // namespace matchgames
