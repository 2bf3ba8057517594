#include "matchgames/constructions.hpp"
#include "matchgames/correlation.hpp"
#include "matchgames/errors.hpp"
#include "matchgames/fractional.hpp"
#include "matchgames/game.hpp"
#include "matchgames/graph.hpp"
#include "matchgames/ncalg.hpp"
#include "matchgames/nonsignaling.hpp"
#include "matchgames/packing.hpp"
#include "matchgames/qstrat.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace matchgames;

namespace {

py::object fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

py::list fractions(const std::vector<Rational>& v) {
    py::list out;
    for (const auto& q : v) out.append(fraction(q));
    return out;
}

std::vector<std::pair<Vertex, Vertex>> edge_pairs(const std::vector<Edge>& edges) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& e : edges) out.emplace_back(e.u, e.v);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> biedge_pairs(const std::vector<BiEdge>& edges) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& e : edges) out.emplace_back(e.left, e.right);
    return out;
}

Graph make_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<Edge> es;
    for (auto [u, v] : edges) es.push_back({std::min(u, v), std::max(u, v)});
    return Graph(n, es);
}

BipartiteGraph make_bipartite(std::size_t nl, std::size_t nr, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<BiEdge> es;
    for (auto [l, r] : edges) es.push_back({l, r});
    return BipartiteGraph(nl, nr, es);
}

py::dict ns_result(const NsResult& r) {
    py::dict d;
    d["value"] = fraction(r.value);
    std::ostringstream out;
    write_correlation(out, r.witness);
    d["witness"] = out.str();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Perfect-matching nonlocal games: exact values, constructions and certificates";

    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edges", [](const Graph& g) { return edge_pairs(g.edges()); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) { return graph_to_string(g); });

    py::class_<BipartiteGraph>(m, "BipartiteGraph")
        .def(py::init(&make_bipartite), py::arg("n_left"), py::arg("n_right"), py::arg("edges"))
        .def_property_readonly("num_left", &BipartiteGraph::num_left)
        .def_property_readonly("num_right", &BipartiteGraph::num_right)
        .def_property_readonly("num_edges", &BipartiteGraph::num_edges)
        .def_property_readonly("edges", [](const BipartiteGraph& g) { return biedge_pairs(g.edges()); })
        .def("__eq__", [](const BipartiteGraph& a, const BipartiteGraph& b) { return a == b; })
        .def("__repr__", [](const BipartiteGraph& g) { return graph_to_string(g); });

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init<std::size_t, std::vector<std::vector<Vertex>>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Hypergraph::num_vertices)
        .def_property_readonly("num_edges", &Hypergraph::num_edges)
        .def_property_readonly("edges", &Hypergraph::edges)
        .def("__repr__", [](const Hypergraph& h) { return graph_to_string(h); });

    m.def("read_graph_file", &read_graph_file, py::arg("path"));
    m.def("parse_graph", [](const std::string& text) {
        std::istringstream in(text);
        return read_graph(in);
    }, py::arg("text"));
    m.def("complete_graph", &complete_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("path_graph", &path_graph);
    m.def("petersen_graph", &petersen_graph);
    m.def("complete_bipartite", &complete_bipartite);
    m.def("line_graph", &line_graph);
    m.def("double_cover", &double_cover);

    m.def("maximum_matching", [](const Graph& g) { return edge_pairs(maximum_matching(g).edges); });
    m.def("has_perfect_matching", [](const Graph& g) { return is_perfect(g, maximum_matching(g)); });
    m.def("independence_number", [](const Graph& g) { return independence_number(g); });
    m.def("sharp_reduction", [](const BipartiteGraph& g) {
        const SharpReduction r = sharp_reduction(g);
        py::dict d;
        d["forced"] = biedge_pairs(r.forced);
        d["lonely_left"] = r.lonely_left;
        d["reduced"] = r.reduced;
        return d;
    });
    m.def("fractional_pm", [](const Graph& g) -> py::object {
        const auto f = fractional_pm(g);
        return f ? py::object(fractions(f->weights)) : py::none();
    });
    m.def("triangle_avoiding_fpm", [](const Graph& g) -> py::object {
        const auto f = triangle_avoiding_fpm(g);
        return f ? py::object(fractions(f->weights)) : py::none();
    });

    py::class_<Game>(m, "Game")
        .def_property_readonly("num_questions", &Game::num_questions)
        .def_property_readonly("num_answers", &Game::num_answers)
        .def("wins", &Game::wins, py::arg("x"), py::arg("y"), py::arg("a"), py::arg("b"))
        .def("__eq__", [](const Game& a, const Game& b) { return a == b; });
    m.def("bpm_game", &bpm_game);
    m.def("pm_game", &pm_game);
    m.def("fpm_game", &fpm_game);
    m.def("hyper_pm_game", &hyper_pm_game);
    m.def("is_synchronous", &is_synchronous);

    m.def("classical_value", [](const Game& game, bool synchronous) {
        const ClassicalResult r = classical_value(game, synchronous);
        py::dict d;
        d["value"] = fraction(r.value);
        d["alice"] = r.best.alice;
        d["bob"] = r.best.bob;
        return d;
    }, py::arg("game"), py::arg("synchronous") = false);
    m.def("ns_value", [](const Game& game, bool synchronous) { return ns_result(ns_value(game, synchronous)); },
          py::arg("game"), py::arg("synchronous") = false);
    m.def("ns_perfect", [](const Game& game) { return ns_perfect(game).has_value(); });

    m.def("verify_correlation", [](const Game& game, const std::string& text) {
        std::istringstream in(text);
        const Correlation p = read_correlation(in);
        py::dict d;
        d["valid"] = is_valid(p);
        d["nonsignaling"] = is_nonsignaling(p);
        d["synchronous"] = is_synchronous_corr(p);
        d["winning_probability"] = fraction(winning_probability(game, p));
        return d;
    }, py::arg("game"), py::arg("correlation"));
    m.def("odd_cycle_correlation", [](std::size_t n) {
        std::ostringstream out;
        write_correlation(out, ns_odd_cycle_corr(n));
        return out.str();
    });

    m.def("kn2_value_table", [](std::size_t n) {
        const Kn2Values v = kn2_value_table(n);
        py::dict d;
        d["classical"] = fraction(v.classical);
        d["quantum"] = fraction(v.quantum);
        d["quantum_synchronous"] = fraction(v.quantum_synchronous);
        return d;
    });
    m.def("verify_sync_sos", [](std::size_t n) {
        const SosIdentity id = sync_sos_identity(n);
        return verify_sos(id.lhs, id.terms);
    });
    m.def("verify_k32_sos", [](bool corrected) {
        const SosIdentity id = corrected ? k32_corrected_sos() : k32_published_sos();
        return verify_sos(id.lhs, id.terms);
    }, py::arg("corrected") = false);

    m.def("k32_optimal_value", [] { return quantum_win_prob(bpm_game(complete_bipartite(3, 2)), k32_optimal_strategy()); });
    m.def("trivial_strategy_value", [](std::size_t n) {
        return quantum_win_prob(bpm_game(complete_bipartite(n, 2)), trivial_strategy(n));
    });
    m.def("seesaw_sweep", [](const Game& game, std::size_t restarts, std::size_t iterations, std::size_t dim,
                             std::uint64_t seed) {
        SeesawOptions opt;
        opt.restarts = restarts;
        opt.iterations = iterations;
        opt.dim_alice = opt.dim_bob = dim;
        opt.seed = seed;
        const SeesawResult r = seesaw_sweep(game, opt);
        py::dict d;
        d["best_value"] = r.best_value;
        d["values"] = r.values;
        d["seeds"] = r.seeds;
        return d;
    }, py::arg("game"), py::arg("restarts") = 200, py::arg("iterations") = 200, py::arg("dim") = 2,
          py::arg("seed") = 0);

    m.def("qpm_search", [](const Graph& g, std::size_t d, std::size_t restarts, std::size_t iterations,
                           std::uint64_t seed) -> py::object {
        QpmSearchOptions opt;
        opt.restarts = restarts;
        opt.iterations = iterations;
        opt.seed = seed;
        const auto fam = seesaw_search(g, d, opt);
        return fam ? py::cast(fam->assign) : py::none();
    }, py::arg("graph"), py::arg("d"), py::arg("restarts") = 20, py::arg("iterations") = 2000, py::arg("seed") = 0);
    m.def("verify_qpm_certificate", [](const Graph& g, const std::vector<CMatrix>& projectors, double tol) {
        const std::size_t d = projectors.empty() ? 1 : static_cast<std::size_t>(projectors.front().rows());
        const QpmReport r = verify_qpm_certificate(g, ProjectorFamily{d, projectors}, tol);
        py::dict out;
        out["pass"] = r.pass;
        out["projector_residual"] = r.projector_residual;
        out["completeness_residual"] = r.completeness_residual;
        out["orthogonality_residual"] = r.orthogonality_residual;
        out["violations"] = r.violations;
        return out;
    }, py::arg("graph"), py::arg("projectors"), py::arg("tol") = 1e-9);
    m.def("packing_value", [](const std::vector<CMatrix>& projectors) {
        const std::size_t d = projectors.empty() ? 1 : static_cast<std::size_t>(projectors.front().rows());
        return packing_value(ProjectorFamily{d, projectors});
    });
}
