#include "commands.hpp"

#include "matchgames/errors.hpp"
#include "matchgames/game.hpp"
#include "matchgames/nonsignaling.hpp"

#include <functional>

namespace matchgames::cli {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Runs an exact value computation; a size-limit failure becomes a note.
Json guarded_value(const std::function<Rational()>& compute) {
    try {
        return to_display_string(compute());
    } catch (const SizeLimitError& e) {
        return std::string("skipped (") + e.what() + ")";
    }
}

Json game_values(const Game& game, const std::string& prefix) {
    const auto limits = NsLimits::from_environment();
    Json v;
    v[prefix + "_classical"] = guarded_value([&] { return classical_value(game).value; });
    v[prefix + "_classical_sync"] = guarded_value([&] { return classical_value(game, true).value; });
    v[prefix + "_ns"] = guarded_value([&] { return ns_value(game, false, limits).value; });
    v[prefix + "_ns_sync"] = guarded_value([&] { return ns_value(game, true, limits).value; });
    return v;
}

Result analyze_graph(const Graph& g) {
    Result r;
    Json& rep = r.report;
    rep["input"] = {{"kind", "graph"}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()}};

    const Matching m = maximum_matching(g);
    const bool perfect = is_perfect(g, m);
    Json pm{{"status", yes_no(perfect)}, {"matching_size", m.size()}};
    Json medges = Json::array();
    for (const auto& e : m.edges) medges.push_back(edge_json(e));
    pm["maximum_matching"] = medges;
    try {
        const std::size_t alpha = independence_number(line_graph(g));
        pm["line_graph_independence"] = alpha;
        pm["independence_agrees"] = perfect == (2 * alpha == g.num_vertices());
    } catch (const SizeLimitError& e) {
        pm["line_graph_independence"] = std::string("skipped (") + e.what() + ")";
    }
    rep["classical_pm"] = pm;

    const auto f = fractional_pm(g);
    const bool cover_ok = std::holds_alternative<BipartiteMatching>(l_perfect_matching(double_cover(g)));
    Json fpm{{"status", yes_no(f.has_value())}};
    if (f) fpm["witness"] = fpm_json(g, *f);
    fpm["double_cover_l_perfect"] = yes_no(cover_ok);
    fpm["agrees"] = f.has_value() == cover_ok;
    rep["fractional_pm"] = fpm;

    const auto tf = triangle_avoiding_fpm(g);
    const auto lp = g.num_edges() ? ns_perfect(pm_game(g)) : std::nullopt;
    const bool lp_yes = lp.has_value() || (g.num_vertices() == 0);
    Json ns{{"status", yes_no(tf.has_value())}};
    ns["triangle_avoiding_fpm"] = yes_no(tf.has_value());
    if (tf) ns["witness"] = fpm_json(g, *tf);
    ns["lp_perfect"] = yes_no(lp_yes);
    ns["agrees"] = tf.has_value() == lp_yes;
    rep["ns_pm"] = ns;

    if (g.num_vertices() > 0 && g.num_edges() > 0)
        rep["values"] = game_values(pm_game(g), "pm");
    else
        rep["values"] = {{"pm", "no answers; every value is 0"}};

    if (!ns["agrees"].get<bool>() || !fpm["agrees"].get<bool>()) r.code = kAbsent;
    return r;
}

Result analyze_bipartite(const BipartiteGraph& g) {
    Result r;
    Json& rep = r.report;
    rep["input"] = {{"kind", "bipartite"}, {"left", g.num_left()}, {"right", g.num_right()}, {"edges", g.num_edges()}};

    auto lpm = l_perfect_matching(g);
    Json l;
    if (const auto* m = std::get_if<BipartiteMatching>(&lpm)) {
        l["status"] = "yes";
        Json pairs = Json::array();
        for (const auto& e : m->pairs) pairs.push_back(biedge_json(e));
        l["matching"] = pairs;
    } else {
        const auto& h = std::get<HallViolator>(lpm);
        l["status"] = "no";
        l["hall_violator"] = {{"left_set", h.left_set}, {"neighbourhood", h.neighbourhood}};
    }
    rep["l_perfect"] = l;

    const auto sharp = sharp_reduction(g);
    Json forced = Json::array();
    for (const auto& e : sharp.forced) forced.push_back(biedge_json(e));
    rep["sharp"] = {{"forced", forced},
                    {"lonely_left", sharp.lonely_left},
                    {"reduced_left", sharp.reduced.num_left()},
                    {"reduced_edges", sharp.reduced.num_edges()}};

    const auto dec = degree2_decomposition(g);
    const bool characterization = sharp.lonely_left.empty();
    const bool lp_yes = g.num_left() == 0 || (g.num_edges() > 0 && ns_perfect(bpm_game(g)).has_value());
    Json ns{{"status", yes_no(characterization)}, {"no_lonely_vertex", yes_no(characterization)}};
    if (dec) {
        Json p = Json::array(), s = Json::array();
        for (const auto& e : dec->matching) p.push_back(biedge_json(e));
        for (const auto& e : dec->degree2.edges()) s.push_back(biedge_json(e));
        ns["forced_part"] = p;
        ns["degree2_part"] = s;
    }
    ns["lp_perfect"] = yes_no(lp_yes);
    ns["agrees"] = characterization == lp_yes && dec.has_value() == characterization;
    rep["ns_bpm"] = ns;

    if (g.num_left() > 0 && g.num_edges() > 0)
        rep["values"] = game_values(bpm_game(g), "bpm");
    else
        rep["values"] = {{"bpm", g.num_left() == 0 ? "no questions" : "no answers; every value is 0"}};
    if (!ns["agrees"].get<bool>()) r.code = kAbsent;
    return r;
}

Result analyze_hypergraph(const Hypergraph& h) {
    Result r;
    Json& rep = r.report;
    rep["input"] = {{"kind", "hypergraph"}, {"vertices", h.num_vertices()}, {"hyperedges", h.num_edges()}};
    const Graph lg = hyper_line_graph(h);
    rep["line_graph"] = {{"vertices", lg.num_vertices()}, {"edges", lg.num_edges()}};
    if (h.num_vertices() > 0 && h.num_edges() > 0) {
        const Game game = hyper_pm_game(h);
        rep["ns_hpm"] = {{"lp_perfect", yes_no(ns_perfect(game).has_value())}};
        rep["values"] = game_values(game, "hpm");
    } else {
        rep["values"] = {{"hpm", "empty game"}};
    }
    return r;
}

}  // namespace

Result run_analyze(const std::string& path) {
    const AnyGraph any = read_graph_file(path);
    Result r;
    if (const auto* g = std::get_if<Graph>(&any))
        r = analyze_graph(*g);
    else if (const auto* b = std::get_if<BipartiteGraph>(&any))
        r = analyze_bipartite(*b);
    else
        r = analyze_hypergraph(std::get<Hypergraph>(any));
    Json full;
    full["tool"] = std::string("matchgames ") + MATCHGAMES_VERSION;
    full["file"] = path;
    for (auto& [k, v] : r.report.items()) full[k] = v;
    r.report = std::move(full);
    return r;
}

}  // namespace matchgames::cli
