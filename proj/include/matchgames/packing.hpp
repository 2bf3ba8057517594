#pragma once

#include "matchgames/graph.hpp"
#include "matchgames/qstrat.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace matchgames {

/// d x d complex projectors indexed by the vertices of a packing graph, or by
/// the edges of a graph when used as a perfect-matching certificate.
struct ProjectorFamily {
    std::size_t dim = 1;
    std::vector<CMatrix> assign;
};

/// True iff every member is a projector and adjacent vertices get projectors
/// with ||P_x P_y|| < tol. Throws InputError if the family size differs from |V(g)|.
bool verify_packing(const Graph& g, const ProjectorFamily& fam, double tol = 1e-9);

/// (1/d) sum_x Tr(P_x), real part.
double packing_value(const ProjectorFamily& fam);

struct QpmReport {
    bool pass = false;
    double projector_residual = 0;     // max ||P^2 - P|| + ||P - P^dagger||
    double completeness_residual = 0;  // max_x ||sum_{e at x} P_e - I||
    double orthogonality_residual = 0; // max ||P_e P_h|| over distinct edges sharing a vertex
    double edge_trace_total = 0;       // sum_e Tr(P_e)
    std::vector<std::string> violations;
};

/// Checks that an edge-indexed family is a perfect synchronous quantum strategy
/// for the perfect matching game: projectors, summing to I around every
/// vertex, pairwise orthogonal on edges that share a vertex. Non-edges carry
/// no projector by construction.
QpmReport verify_qpm_certificate(const Graph& g, const ProjectorFamily& fam, double tol = 1e-9);

struct QpmEquivalence {
    bool packing_on_line_graph = false;  // the family is a packing of L(g)
    double packing_value = 0;
    double expected_value = 0;           // |V(g)| / 2
    bool value_matches = false;          // |value - |V|/2| <= tol
    // Reverse direction: each vertex sum S_x is a projector with Tr(S_x) <= d;
    // the value |V|/2 forces every trace to d and hence S_x = I.
    double max_vertex_trace_excess = 0;  // max_x Tr(S_x) - d (never positive up to tol)
    bool completeness_recovered = false;
    bool trace_identity_holds = false;   // 2 sum_e Tr(P_e) = |V| d
};

/// Runs both directions of the certificate/packing equivalence on a family that
/// passes verify_qpm_certificate. Throws InputError otherwise.
QpmEquivalence qpm_equiv_checks(const Graph& g, const ProjectorFamily& fam, double tol = 1e-9);

/// d = 1 certificate with P_e = 1 on the matching edges and 0 elsewhere.
ProjectorFamily classical_certificate(const Graph& g, const Matching& m);

struct QpmSearchOptions {
    std::size_t restarts = 20;
    std::size_t iterations = 2000;  // per restart
    std::uint64_t seed = 0;
    double convergence = 1e-7;
};

/// Alternating-projection hunt for a certificate in dimension d. Each restart
/// fixes integer ranks r_e with sum_{e at x} r_e = d, then alternates between
/// making each vertex's projectors an orthogonal decomposition of C^d (nearest
/// unitary) and averaging the two endpoint proposals per edge. Returns only a
/// family that passes verify_qpm_certificate; absence proves nothing.
std::optional<ProjectorFamily> seesaw_search(const Graph& g, std::size_t d, const QpmSearchOptions& opt = {});

/// Compares "g has a perfect matching" with "alpha(L(g)) = |V|/2"; true when
/// the two agree.
bool classical_pm_alpha_check(const Graph& g, const GraphLimits& limits = {});

struct QpmCertificate {
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
    ProjectorFamily family;
};

/// `qpm <n> <d>`, then per edge `edge <u> <v>` followed by d rows of `re im`
/// pairs. Doubles are printed with enough digits to round-trip exactly.
void write_certificate(std::ostream& out, const QpmCertificate& c);
QpmCertificate read_certificate(std::istream& in);

/// Reorders a certificate's matrices to follow g's edge order. Throws
/// InputError if the edge sets differ.
ProjectorFamily family_for_graph(const Graph& g, const QpmCertificate& c);

}  // namespace matchgames
