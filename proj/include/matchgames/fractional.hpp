#pragma once

#include "matchgames/graph.hpp"
#include "matchgames/rational.hpp"

#include <optional>
#include <vector>

namespace matchgames {

// Edge weights indexed like g.edges().
struct FractionalMatching {
    std::vector<Rational> weights;
    bool operator==(const FractionalMatching&) const = default;
};

// Weights in [0, 1] summing to exactly one around every vertex.
bool is_fractional_perfect_matching(const Graph& g, const FractionalMatching& f);
// Every triangle carries total weight at most one.
bool avoids_triangles(const Graph& g, const FractionalMatching& f);

/// Exact feasibility LP for a fractional perfect matching; returns a vertex
/// solution of the polytope or nothing.
std::optional<FractionalMatching> fractional_pm(const Graph& g);

/// As fractional_pm, with one extra `sum <= 1` row per triangle.
std::optional<FractionalMatching> triangle_avoiding_fpm(const Graph& g);

/// Searches for a triangle-avoiding fractional perfect matching with values in
/// {0, 1/2, 1} by backtracking. Exploratory only.
std::optional<FractionalMatching> half_integral_triangle_avoiding_fpm(const Graph& g);

}  // namespace matchgames
