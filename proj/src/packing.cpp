#include "matchgames/packing.hpp"

#include "matchgames/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>

namespace matchgames {

namespace {

using Complex = std::complex<double>;

double operator_norm(const CMatrix& m) {
    if (m.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double projector_defect(const CMatrix& p) { return operator_norm(p * p - p) + operator_norm(p - p.adjoint()); }

void check_dims(const ProjectorFamily& fam, std::size_t expected, const char* what) {
    if (fam.assign.size() != expected)
        throw InputError(std::string("family has ") + std::to_string(fam.assign.size()) + " members, expected one per " +
                         what + " (" + std::to_string(expected) + ")");
    for (const auto& m : fam.assign)
        if (static_cast<std::size_t>(m.rows()) != fam.dim || static_cast<std::size_t>(m.cols()) != fam.dim)
            throw InputError("family member has the wrong dimension");
}

}  // namespace

bool verify_packing(const Graph& g, const ProjectorFamily& fam, double tol) {
    check_dims(fam, g.num_vertices(), "vertex");
    for (const auto& p : fam.assign)
        if (projector_defect(p) >= tol) return false;
    for (const auto& e : g.edges())
        if (operator_norm(fam.assign[e.u] * fam.assign[e.v]) >= tol) return false;
    return true;
}

double packing_value(const ProjectorFamily& fam) {
    double total = 0;
    for (const auto& p : fam.assign) total += p.trace().real();
    return fam.dim ? total / static_cast<double>(fam.dim) : 0.0;
}

QpmReport verify_qpm_certificate(const Graph& g, const ProjectorFamily& fam, double tol) {
    QpmReport r;
    if (fam.assign.size() != g.num_edges()) {
        r.violations.push_back("family has " + std::to_string(fam.assign.size()) + " members for " +
                               std::to_string(g.num_edges()) + " edges");
        return r;
    }
    for (const auto& m : fam.assign)
        if (static_cast<std::size_t>(m.rows()) != fam.dim || static_cast<std::size_t>(m.cols()) != fam.dim) {
            r.violations.push_back("a member is not " + std::to_string(fam.dim) + "x" + std::to_string(fam.dim));
            return r;
        }
    const CMatrix id = CMatrix::Identity(fam.dim, fam.dim);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const double defect = projector_defect(fam.assign[e]);
        r.projector_residual = std::max(r.projector_residual, defect);
        r.edge_trace_total += fam.assign[e].trace().real();
        if (defect >= tol)
            r.violations.push_back("edge " + std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v) +
                                   " is not a projector (residual " + std::to_string(defect) + ")");
    }
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        CMatrix sum = CMatrix::Zero(fam.dim, fam.dim);
        for (auto e : g.incident(x)) sum += fam.assign[e];
        const double c = operator_norm(sum - id);
        r.completeness_residual = std::max(r.completeness_residual, c);
        if (c >= tol)
            r.violations.push_back("completeness fails at vertex " + std::to_string(x) + " (residual " +
                                   std::to_string(c) + ")");
        const auto& inc = g.incident(x);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                const double o = operator_norm(fam.assign[inc[i]] * fam.assign[inc[j]]);
                r.orthogonality_residual = std::max(r.orthogonality_residual, o);
                if (o >= tol) {
                    const auto& a = g.edge(inc[i]);
                    const auto& b = g.edge(inc[j]);
                    r.violations.push_back("edges " + std::to_string(a.u) + "-" + std::to_string(a.v) + " and " +
                                           std::to_string(b.u) + "-" + std::to_string(b.v) +
                                           " are not orthogonal (residual " + std::to_string(o) + ")");
                }
            }
    }
    r.pass = r.violations.empty();
    return r;
}

QpmEquivalence qpm_equiv_checks(const Graph& g, const ProjectorFamily& fam, double tol) {
    if (!verify_qpm_certificate(g, fam, tol).pass) throw InputError("family is not a valid certificate");
    QpmEquivalence q;
    const double d = static_cast<double>(fam.dim);
    q.packing_on_line_graph = verify_packing(line_graph(g), fam, tol);
    q.packing_value = packing_value(fam);
    q.expected_value = static_cast<double>(g.num_vertices()) / 2.0;
    q.value_matches = std::abs(q.packing_value - q.expected_value) <= tol;

    // Reverse chain: value |V|/2 and pairwise orthogonality force S_x = I.
    bool recovered = true;
    double vertex_trace_total = 0;
    q.max_vertex_trace_excess = -std::numeric_limits<double>::infinity();
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        CMatrix sum = CMatrix::Zero(fam.dim, fam.dim);
        for (auto e : g.incident(x)) sum += fam.assign[e];
        const double tr = sum.trace().real();
        vertex_trace_total += tr;
        q.max_vertex_trace_excess = std::max(q.max_vertex_trace_excess, tr - d);
        const bool is_projector = projector_defect(sum) < tol;
        const bool full_trace = std::abs(tr - d) < tol * d;
        recovered = recovered && is_projector && full_trace &&
                    operator_norm(sum - CMatrix::Identity(fam.dim, fam.dim)) < tol;
    }
    if (g.num_vertices() == 0) q.max_vertex_trace_excess = 0;
    const bool value_forces_full = std::abs(vertex_trace_total - 2.0 * q.packing_value * d) < tol * d;
    q.completeness_recovered = recovered && value_forces_full && q.value_matches;
    double edge_total = 0;
    for (const auto& p : fam.assign) edge_total += p.trace().real();
    q.trace_identity_holds = std::abs(2.0 * edge_total - static_cast<double>(g.num_vertices()) * d) < tol * std::max(1.0, d);
    return q;
}

ProjectorFamily classical_certificate(const Graph& g, const Matching& m) {
    ProjectorFamily fam{1, std::vector<CMatrix>(g.num_edges(), CMatrix::Zero(1, 1))};
    for (const auto& e : m.edges) {
        auto idx = g.edge_index(e.u, e.v);
        if (!idx) throw InputError("matching edge not in graph");
        fam.assign[*idx](0, 0) = 1.0;
    }
    return fam;
}

namespace {

// Random integer ranks with sum d around every vertex, by randomized backtracking.
std::optional<std::vector<std::size_t>> random_rank_pattern(const Graph& g, std::size_t d, std::mt19937_64& rng) {
    const std::size_t m = g.num_edges();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> rem(g.num_vertices(), d), ranks(m, 0), open(g.num_vertices());
    for (Vertex x = 0; x < g.num_vertices(); ++x) open[x] = g.degree(x);
    std::size_t budget = 200000;

    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (budget-- == 0) return false;
        if (k == m) return std::all_of(rem.begin(), rem.end(), [](std::size_t r) { return r == 0; });
        const auto& e = g.edge(order[k]);
        const std::size_t hi = std::min(rem[e.u], rem[e.v]);
        std::vector<std::size_t> values(hi + 1);
        for (std::size_t v = 0; v <= hi; ++v) values[v] = v;
        std::shuffle(values.begin(), values.end(), rng);
        --open[e.u];
        --open[e.v];
        for (auto v : values) {
            rem[e.u] -= v;
            rem[e.v] -= v;
            // A vertex with no open edges must be saturated.
            if ((open[e.u] > 0 || rem[e.u] == 0) && (open[e.v] > 0 || rem[e.v] == 0)) {
                ranks[order[k]] = v;
                if (self(self, k + 1)) return true;
            }
            rem[e.u] += v;
            rem[e.v] += v;
        }
        ++open[e.u];
        ++open[e.v];
        return false;
    };
    for (Vertex x = 0; x < g.num_vertices(); ++x)
        if (g.degree(x) == 0 && d > 0) return std::nullopt;
    if (!rec(rec, 0)) return std::nullopt;
    return ranks;
}

CMatrix random_isometry(std::size_t d, std::size_t r, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    CMatrix g(d, r);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < r; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    return qr.householderQ() * CMatrix::Identity(d, r);
}

CMatrix top_eigenvectors(const CMatrix& h, std::size_t r) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
    return es.eigenvectors().rightCols(static_cast<Eigen::Index>(r));
}

ProjectorFamily family_from_isometries(const std::vector<CMatrix>& iso, std::size_t d) {
    ProjectorFamily fam{d, {}};
    for (const auto& v : iso) fam.assign.push_back(v.cols() ? CMatrix(v * v.adjoint()) : CMatrix::Zero(d, d));
    return fam;
}

}  // namespace

std::optional<ProjectorFamily> seesaw_search(const Graph& g, std::size_t d, const QpmSearchOptions& opt) {
    if (d == 0) throw InputError("dimension must be positive");
    // Ranks are integers and each edge is counted at both endpoints.
    if ((g.num_vertices() * d) % 2 == 1) return std::nullopt;
    std::mt19937_64 rng(opt.seed);

    for (std::size_t restart = 0; restart < opt.restarts; ++restart) {
        auto ranks = random_rank_pattern(g, d, rng);
        if (!ranks) continue;
        std::vector<CMatrix> iso(g.num_edges());
        for (std::size_t e = 0; e < g.num_edges(); ++e) iso[e] = random_isometry(d, (*ranks)[e], rng);

        for (std::size_t it = 0; it < opt.iterations; ++it) {
            std::vector<CMatrix> proposal(g.num_edges(), CMatrix::Zero(d, d));
            for (Vertex x = 0; x < g.num_vertices(); ++x) {
                CMatrix w(d, d);
                Eigen::Index col = 0;
                for (auto e : g.incident(x)) {
                    w.middleCols(col, iso[e].cols()) = iso[e];
                    col += iso[e].cols();
                }
                Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
                const CMatrix q = svd.matrixU() * svd.matrixV().adjoint();
                col = 0;
                for (auto e : g.incident(x)) {
                    const auto r = iso[e].cols();
                    const CMatrix block = q.middleCols(col, r);
                    proposal[e] += block * block.adjoint() / 2.0;
                    col += r;
                }
            }
            for (std::size_t e = 0; e < g.num_edges(); ++e)
                if ((*ranks)[e] > 0) iso[e] = top_eigenvectors(proposal[e], (*ranks)[e]);

            if (it % 10 == 9 || it + 1 == opt.iterations) {
                auto fam = family_from_isometries(iso, d);
                auto report = verify_qpm_certificate(g, fam, opt.convergence);
                if (report.pass) {
                    if (verify_qpm_certificate(g, fam).pass) return fam;
                }
            }
        }
        // Final polish check at the verification tolerance.
        auto fam = family_from_isometries(iso, d);
        if (verify_qpm_certificate(g, fam).pass) return fam;
    }
    return std::nullopt;
}

bool classical_pm_alpha_check(const Graph& g, const GraphLimits& limits) {
    const bool perfect = is_perfect(g, maximum_matching(g, limits));
    const std::size_t alpha = independence_number(line_graph(g), limits);
    return perfect == (2 * alpha == g.num_vertices());
}

void write_certificate(std::ostream& out, const QpmCertificate& c) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "qpm " << c.num_vertices << ' ' << c.family.dim << '\n';
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        out << "edge " << c.edges[e].u << ' ' << c.edges[e].v << '\n';
        const auto& m = c.family.assign.at(e);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (j) out << ' ';
                out << m(i, j).real() << ' ' << m(i, j).imag();
            }
            out << '\n';
        }
    }
}

QpmCertificate read_certificate(std::istream& in) {
    QpmCertificate c;
    std::string tag;
    if (!(in >> tag >> c.num_vertices >> c.family.dim) || tag != "qpm") throw InputError("bad certificate header");
    if (c.family.dim == 0) throw InputError("certificate dimension must be positive");
    const std::size_t d = c.family.dim;
    while (in >> tag) {
        if (tag != "edge") throw InputError("expected `edge u v`, got " + tag);
        Edge e;
        if (!(in >> e.u >> e.v)) throw InputError("bad edge line");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v || e.v >= c.num_vertices) throw InputError("certificate edge out of range");
        CMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double re, im;
                if (!(in >> re >> im)) throw InputError("truncated certificate matrix");
                m(i, j) = Complex(re, im);
            }
        c.edges.push_back(e);
        c.family.assign.push_back(std::move(m));
    }
    return c;
}

ProjectorFamily family_for_graph(const Graph& g, const QpmCertificate& c) {
    if (c.num_vertices != g.num_vertices()) throw InputError("certificate vertex count does not match the graph");
    if (c.edges.size() != g.num_edges()) throw InputError("certificate edge count does not match the graph");
    ProjectorFamily fam{c.family.dim, std::vector<CMatrix>(g.num_edges())};
    std::vector<bool> seen(g.num_edges(), false);
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        auto idx = g.edge_index(c.edges[k].u, c.edges[k].v);
        if (!idx || seen[*idx]) throw InputError("certificate edge set does not match the graph");
        seen[*idx] = true;
        fam.assign[*idx] = c.family.assign[k];
    }
    return fam;
}

}  // namespace matchgames
