#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace matchgames {

using Vertex = std::size_t;

// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0, v = 0;
    auto operator<=>(const Edge&) const = default;
    bool contains(Vertex x) const { return u == x || v == x; }
    bool meets(const Edge& o) const { return contains(o.u) || contains(o.v); }
    Vertex other(Vertex x) const { return x == u ? v : u; }
};

// Left-right pair of a bipartite graph.
struct BiEdge {
    Vertex left = 0, right = 0;
    auto operator<=>(const BiEdge&) const = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are kept in
/// lexicographic order; that order indexes line-graph vertices and game answers.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    bool adjacent(Vertex a, Vertex b) const { return edge_index(a, b).has_value(); }
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
    const std::vector<Vertex>& neighbors(Vertex x) const { return neighbors_[x]; }
    // Indices of edges incident to x, ascending.
    const std::vector<std::size_t>& incident(Vertex x) const { return incident_[x]; }
    std::size_t degree(Vertex x) const { return neighbors_[x].size(); }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<int> index_;  // n*n table, -1 for non-edges
};

/// Bipartite graph with parts L = 0..nL-1 and R = 0..nR-1.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t n_left, std::size_t n_right, std::vector<BiEdge> edges);

    std::size_t num_left() const { return n_left_; }
    std::size_t num_right() const { return n_right_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<BiEdge>& edges() const { return edges_; }
    const BiEdge& edge(std::size_t i) const { return edges_[i]; }

    std::optional<std::size_t> edge_index(Vertex l, Vertex r) const;
    const std::vector<Vertex>& left_neighbors(Vertex l) const { return left_adj_[l]; }
    const std::vector<Vertex>& right_neighbors(Vertex r) const { return right_adj_[r]; }
    const std::vector<std::size_t>& incident_left(Vertex l) const { return left_incident_[l]; }

    bool operator==(const BipartiteGraph& o) const {
        return n_left_ == o.n_left_ && n_right_ == o.n_right_ && edges_ == o.edges_;
    }

private:
    std::size_t n_left_ = 0, n_right_ = 0;
    std::vector<BiEdge> edges_;
    std::vector<std::vector<Vertex>> left_adj_, right_adj_;
    std::vector<std::vector<std::size_t>> left_incident_;
    std::vector<int> index_;
};

/// Hypergraph; hyperedges keep their input order and are stored sorted.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> hyperedges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<std::vector<Vertex>>& edges() const { return edges_; }
    bool contains(std::size_t e, Vertex x) const;
    bool intersect(std::size_t e, std::size_t f) const;

    bool operator==(const Hypergraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Vertex>> edges_;
};

struct Matching {
    std::vector<Edge> edges;
    std::size_t size() const { return edges.size(); }
};

struct BipartiteMatching {
    std::vector<BiEdge> pairs;  // sorted by left vertex
};

// Witness that no L-perfect matching exists: |N(S)| < |S|.
struct HallViolator {
    std::vector<Vertex> left_set;
    std::vector<Vertex> neighbourhood;
};

struct SharpReduction {
    BipartiteGraph reduced;            // surviving vertices, relabelled compactly
    std::vector<Vertex> left_labels;   // original label of each reduced left vertex
    std::vector<Vertex> right_labels;  // original label of each reduced right vertex
    std::vector<BiEdge> forced;        // removal order, original labels
    std::vector<Vertex> lonely_left;   // original labels, ascending
};

struct Degree2Decomposition {
    std::vector<BiEdge> matching;       // forced pairs P
    BipartiteGraph degree2;             // S on the original vertex sets
    std::vector<Vertex> degree2_left;   // left vertices covered by S, ascending
};

struct GraphLimits {
    std::size_t max_matching_vertices = 32;
    std::size_t independence_vertices = 24;
};

Graph line_graph(const Graph& g);
Graph hyper_line_graph(const Hypergraph& h);
BipartiteGraph double_cover(const Graph& g);
Graph disjoint_union(const Graph& g, std::size_t copies);
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph petersen_graph();
BipartiteGraph complete_bipartite(std::size_t n_left, std::size_t n_right);
// Bipartite graph viewed as a general graph on L then R (right r becomes nL + r).
Graph as_graph(const BipartiteGraph& g);
// Hypergraph with one 2-element hyperedge per graph edge, same order.
Hypergraph as_hypergraph(const Graph& g);

/// Iteratively strips degree-1 left vertices and their right neighbours.
/// `scan_order`, when given, is the priority order in which left vertices are examined.
SharpReduction sharp_reduction(const BipartiteGraph& g, std::span<const Vertex> scan_order = {});

/// Maximum-cardinality matching by exhaustive branch-and-bound.
Matching maximum_matching(const Graph& g, const GraphLimits& limits = {});
bool is_perfect(const Graph& g, const Matching& m);
bool is_matching(const Graph& g, const std::vector<Edge>& edges);

std::variant<BipartiteMatching, HallViolator> l_perfect_matching(const BipartiteGraph& g);

std::vector<std::array<Vertex, 3>> triangles(const Graph& g);

std::size_t independence_number(const Graph& g, const GraphLimits& limits = {});

std::optional<Degree2Decomposition> degree2_decomposition(const BipartiteGraph& g);

using AnyGraph = std::variant<Graph, BipartiteGraph, Hypergraph>;

void write_graph(std::ostream& out, const AnyGraph& g);
AnyGraph read_graph(std::istream& in);
AnyGraph read_graph_file(const std::string& path);
std::string graph_to_string(const AnyGraph& g);

}  // namespace matchgames
