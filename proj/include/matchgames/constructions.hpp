#pragma once

#include "matchgames/correlation.hpp"
#include "matchgames/fractional.hpp"
#include "matchgames/graph.hpp"

#include <optional>

namespace matchgames {

/// Perfect nonsignaling correlation for bpm_game(g) when every left vertex has
/// degree exactly 2. Each left vertex picks either edge with probability 1/2;
/// two left vertices with a common neighbour pick disjoint edges covering it,
/// and vertices with disjoint neighbourhoods answer independently.
/// Throws InputError if some left degree differs from 2.
Correlation ns_left_degree2_corr(const BipartiteGraph& g);

/// Perfect nonsignaling correlation for bpm_game(g) built from the degree-1
/// reduction: forced left vertices answer their forced edge, the rest play the
/// degree-2 strategy on the trimmed remainder. Empty when a lonely left vertex
/// survives the reduction.
std::optional<Correlation> ns_from_sharp(const BipartiteGraph& g);

/// Perfect nonsignaling correlation for pm_game(cycle_graph(n)), n odd and at
/// least 5. Edge (x, x+1) is "forward" at x and "backward" at x+1. Each vertex
/// answers forward or backward with probability 1/2; neighbours pick the shared
/// edge together or the two edges away from each other; vertices at distance 2
/// pick the two edges avoiding their common neighbour; farther pairs are
/// independent. Throws InputError for other n.
Correlation ns_odd_cycle_corr(std::size_t n);

/// The table that spreads 1/4 over all four answer pairs for every
/// non-adjacent question pair. Nonsignaling but not perfect: distance-2 pairs
/// lose when both edges touch the common neighbour.
Correlation uniform_nonadjacent_cycle_corr(std::size_t n);

/// Perfect nonsignaling correlation for pm_game(g) whose marginal on edge xy is
/// f(xy). For each ordered pair x != x' the weights h = r f (r the lcm of the
/// denominators) are expanded into copies and a perfect matching between the
/// copies around x and around x' (different endpoints only) fixes the joint
/// table. Throws InputError unless f is a triangle-avoiding fractional perfect
/// matching of g.
Correlation fpm_to_ns_correlation(const Graph& g, const FractionalMatching& f);

/// Reads f(xy) = p(xy | x) off a perfect nonsignaling correlation for
/// pm_game(g). Throws InputError naming the first failed check: table shape,
/// validity, nonsignaling, perfection, marginal symmetry p(xy|x) = p(xy|y),
/// the vertex sums, or the triangle bound.
FractionalMatching marginals_to_fpm(const Correlation& p, const Graph& g);

}  // namespace matchgames
