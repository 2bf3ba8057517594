#include "matchgames/nonsignaling.hpp"

#include "matchgames/errors.hpp"

#include <cstdlib>
#include <string>

namespace matchgames {

NsLimits NsLimits::from_environment() {
    NsLimits limits;
    if (const char* env = std::getenv("MATCHGAMES_MAX_LP_VARS")) {
        try {
            limits.max_variables = std::stoul(env);
        } catch (const std::exception&) {
            throw InputError(std::string("MATCHGAMES_MAX_LP_VARS is not a number: ") + env);
        }
    }
    return limits;
}

LinearProgram ns_program(const Game& game, bool synchronous) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    if (nq == 0 || na == 0) throw InputError("nonsignaling LP needs nonempty question and answer sets");
    LinearProgram lp(nq * nq * na * na);
    const Rational weight(1, nq * nq);
    for (std::size_t i = 0; i < game.table().size(); ++i)
        if (game.table()[i]) lp.set_objective(i, weight);

    auto var = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) { return game.index(x, y, a, b); };
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y) {
            std::vector<Term> terms;
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b) terms.push_back({var(x, y, a, b), 1});
            lp.add_constraint(std::move(terms), Relation::Equal, 1);
        }
    // Bob's marginal on (y, b) does not depend on x.
    for (std::size_t y = 0; y < nq; ++y)
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t x = 1; x < nq; ++x) {
                std::vector<Term> terms;
                for (std::size_t a = 0; a < na; ++a) {
                    terms.push_back({var(x, y, a, b), 1});
                    terms.push_back({var(0, y, a, b), -1});
                }
                lp.add_constraint(std::move(terms), Relation::Equal, 0);
            }
    // Alice's marginal on (x, a) does not depend on y.
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t y = 1; y < nq; ++y) {
                std::vector<Term> terms;
                for (std::size_t b = 0; b < na; ++b) {
                    terms.push_back({var(x, y, a, b), 1});
                    terms.push_back({var(x, 0, a, b), -1});
                }
                lp.add_constraint(std::move(terms), Relation::Equal, 0);
            }
    if (synchronous)
        for (std::size_t x = 0; x < nq; ++x)
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b)
                    if (a != b) lp.add_constraint({{var(x, x, a, b), 1}}, Relation::Equal, 0);
    return lp;
}

NsResult ns_value(const Game& game, bool synchronous, const NsLimits& limits) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    const std::size_t vars = nq * nq * na * na;
    if (vars > limits.max_variables)
        throw SizeLimitError("nonsignaling LP with " + std::to_string(vars) + " variables (cap " +
                             std::to_string(limits.max_variables) + ")");
    auto lp = ns_program(game, synchronous);
    auto res = solve_lp(lp);
    // The program is bounded and nonempty (uniform p is feasible, and the
    // synchronous variant admits the uniform diagonal correlation).
    if (res.status != LpStatus::Optimal) throw std::logic_error("nonsignaling LP did not reach an optimum");
    Correlation witness(nq, na);
    witness.table() = std::move(res.point);
    return {res.value, std::move(witness)};
}

namespace {

std::optional<Correlation> ns_perfect_symmetric(const Game& game) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    // Marginal variables m(a|x) = p(a, a | x, x) for answers winning on the diagonal.
    std::vector<std::vector<std::size_t>> diag(nq);
    std::vector<std::size_t> marginal_var(nq * na, SIZE_MAX);
    std::size_t count = 0;
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a)
            if (game.wins(x, x, a, a)) {
                diag[x].push_back(a);
                marginal_var[x * na + a] = count++;
            }
    for (std::size_t x = 0; x < nq; ++x)
        if (diag[x].empty()) return std::nullopt;

    struct Cell {
        std::size_t x, y, a, b;
    };
    std::vector<Cell> cells;
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = x + 1; y < nq; ++y)
            for (std::size_t a : diag[x])
                for (std::size_t b : diag[y])
                    if (game.wins(x, y, a, b)) cells.push_back({x, y, a, b});

    LinearProgram lp(count + cells.size());
    for (std::size_t x = 0; x < nq; ++x) {
        std::vector<Term> terms;
        for (std::size_t a : diag[x]) terms.push_back({marginal_var[x * na + a], 1});
        lp.add_constraint(std::move(terms), Relation::Equal, 1);
    }
    // Row sums of block (x, y) equal m(.|x); column sums equal m(.|y).
    std::vector<std::vector<Term>> rows(nq * nq * na), cols(nq * nq * na);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& c = cells[k];
        rows[(c.x * nq + c.y) * na + c.a].push_back({count + k, 1});
        cols[(c.x * nq + c.y) * na + c.b].push_back({count + k, 1});
    }
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = x + 1; y < nq; ++y) {
            for (std::size_t a : diag[x]) {
                auto terms = rows[(x * nq + y) * na + a];
                terms.push_back({marginal_var[x * na + a], -1});
                lp.add_constraint(std::move(terms), Relation::Equal, 0);
            }
            for (std::size_t b : diag[y]) {
                auto terms = cols[(x * nq + y) * na + b];
                terms.push_back({marginal_var[y * na + b], -1});
                lp.add_constraint(std::move(terms), Relation::Equal, 0);
            }
        }
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;

    Correlation p(nq, na);
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a : diag[x]) p(x, x, a, a) = res.point[marginal_var[x * na + a]];
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& c = cells[k];
        p(c.x, c.y, c.a, c.b) = res.point[count + k];
        p(c.y, c.x, c.b, c.a) = res.point[count + k];
    }
    return p;
}

std::optional<Correlation> ns_perfect_general(const Game& game) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    // Full program with every losing entry fixed at zero.
    auto full = ns_program(game);
    for (std::size_t i = 0; i < game.table().size(); ++i)
        if (!game.table()[i]) full.add_constraint({{i, 1}}, Relation::Equal, 0);
    auto res = solve_lp(full);
    if (res.status != LpStatus::Optimal || res.value != 1) return std::nullopt;
    Correlation p(nq, na);
    p.table() = std::move(res.point);
    return p;
}

}  // namespace

std::optional<Correlation> ns_perfect(const Game& game) {
    if (game.num_questions() == 0 || game.num_answers() == 0)
        throw InputError("ns_perfect needs nonempty question and answer sets");
    auto p = is_synchronous(game) && is_symmetric(game) ? ns_perfect_symmetric(game) : ns_perfect_general(game);
    if (p && !(is_valid(*p) && is_nonsignaling(*p) && winning_probability(game, *p) == 1))
        throw std::logic_error("ns_perfect produced an invalid witness");
    return p;
}

}  // namespace matchgames
