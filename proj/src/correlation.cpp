#include "matchgames/correlation.hpp"

#include "matchgames/errors.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace matchgames {

Correlation::Correlation(std::size_t num_questions, std::size_t num_answers)
    : nq_(num_questions), na_(num_answers), table_(nq_ * nq_ * na_ * na_) {}

Rational Correlation::alice_marginal(std::size_t x, std::size_t y, std::size_t a) const {
    Rational s = 0;
    for (std::size_t b = 0; b < na_; ++b) s += (*this)(x, y, a, b);
    return s;
}

Rational Correlation::bob_marginal(std::size_t x, std::size_t y, std::size_t b) const {
    Rational s = 0;
    for (std::size_t a = 0; a < na_; ++a) s += (*this)(x, y, a, b);
    return s;
}

bool is_valid(const Correlation& p) {
    const std::size_t nq = p.num_questions(), na = p.num_answers();
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y) {
            Rational total = 0;
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b) {
                    if (sgn(p(x, y, a, b)) < 0) return false;
                    total += p(x, y, a, b);
                }
            if (total != 1) return false;
        }
    return true;
}

bool is_nonsignaling(const Correlation& p) {
    const std::size_t nq = p.num_questions(), na = p.num_answers();
    for (std::size_t y = 0; y < nq; ++y)
        for (std::size_t b = 0; b < na; ++b) {
            Rational ref = p.bob_marginal(0, y, b);
            for (std::size_t x = 1; x < nq; ++x)
                if (p.bob_marginal(x, y, b) != ref) return false;
        }
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a) {
            Rational ref = p.alice_marginal(x, 0, a);
            for (std::size_t y = 1; y < nq; ++y)
                if (p.alice_marginal(x, y, a) != ref) return false;
        }
    return true;
}

bool is_synchronous_corr(const Correlation& p) {
    for (std::size_t x = 0; x < p.num_questions(); ++x)
        for (std::size_t a = 0; a < p.num_answers(); ++a)
            for (std::size_t b = 0; b < p.num_answers(); ++b)
                if (a != b && sgn(p(x, x, a, b)) != 0) return false;
    return true;
}

bool is_bisynchronous_corr(const Correlation& p) {
    if (!is_synchronous_corr(p)) return false;
    for (std::size_t x = 0; x < p.num_questions(); ++x)
        for (std::size_t y = 0; y < p.num_questions(); ++y)
            for (std::size_t a = 0; a < p.num_answers(); ++a)
                if (x != y && sgn(p(x, y, a, a)) != 0) return false;
    return true;
}

Rational winning_probability(const Game& game, const Correlation& p) {
    if (game.num_questions() != p.num_questions() || game.num_answers() != p.num_answers())
        throw InputError("correlation shape does not match the game");
    Rational total = 0;
    const auto& table = game.table();
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i]) total += p.table()[i];
    const std::size_t nq = game.num_questions();
    return total / Rational(nq * nq);
}

Correlation deterministic_correlation(const DeterministicStrategy& s, std::size_t num_answers) {
    const std::size_t nq = s.alice.size();
    if (s.bob.size() != nq) throw InputError("strategy maps have different domains");
    Correlation p(nq, num_answers);
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y) {
            if (s.alice[x] >= num_answers || s.bob[y] >= num_answers) throw InputError("strategy answer out of range");
            p(x, y, s.alice[x], s.bob[y]) = 1;
        }
    return p;
}

ClassicalResult classical_value(const Game& game, bool synchronous, const ClassicalLimits& limits) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    if (nq == 0 || na == 0) throw InputError("classical_value needs nonempty question and answer sets");

    // Alice candidates: answers that win somewhere; keep answer 0 if none do.
    // Bob candidates likewise in his role. Dropping never-winning answers
    // cannot lower the value.
    std::vector<std::vector<std::size_t>> cand_a(nq), cand_b(nq);
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a) {
            bool alice_wins = false, bob_wins = false;
            for (std::size_t y = 0; y < nq && !(alice_wins && bob_wins); ++y)
                for (std::size_t b = 0; b < na; ++b) {
                    alice_wins = alice_wins || game.wins(x, y, a, b);
                    bob_wins = bob_wins || game.wins(y, x, b, a);
                }
            if (alice_wins || (synchronous && bob_wins)) cand_a[x].push_back(a);
            if (bob_wins) cand_b[x].push_back(a);
        }
    for (std::size_t x = 0; x < nq; ++x) {
        if (cand_a[x].empty()) cand_a[x].push_back(0);
        if (cand_b[x].empty()) cand_b[x].push_back(0);
    }

    double count = 1;
    for (const auto& c : cand_a) count *= static_cast<double>(c.size());
    if (count > limits.max_assignments)
        throw SizeLimitError("classical enumeration of " + std::to_string(count) + " assignments");

    std::vector<std::size_t> digit(nq, 0), fa(nq);
    std::size_t best_score = 0;
    bool have_best = false;
    DeterministicStrategy best;
    std::vector<std::size_t> fb(nq);

    for (;;) {
        for (std::size_t x = 0; x < nq; ++x) fa[x] = cand_a[x][digit[x]];
        std::size_t score = 0;
        if (synchronous) {
            for (std::size_t x = 0; x < nq; ++x)
                for (std::size_t y = 0; y < nq; ++y) score += game.wins(x, y, fa[x], fa[y]);
            fb = fa;
        } else {
            // Bob's best response decomposes over his questions; the lowest
            // maximizing answer keeps f_B lexicographically first.
            for (std::size_t y = 0; y < nq; ++y) {
                std::size_t best_here = 0, arg = cand_b[y][0];
                bool first = true;
                for (std::size_t b : cand_b[y]) {
                    std::size_t s = 0;
                    for (std::size_t x = 0; x < nq; ++x) s += game.wins(x, y, fa[x], b);
                    if (first || s > best_here) {
                        best_here = s;
                        arg = b;
                        first = false;
                    }
                }
                fb[y] = arg;
                score += best_here;
            }
        }
        if (!have_best || score > best_score) {
            best_score = score;
            best = {fa, fb};
            have_best = true;
        }
        if (best_score == nq * nq) break;

        // Odometer over Alice's candidates; question 0 is the most significant digit.
        bool exhausted = true;
        for (std::size_t pos = nq; pos-- > 0;) {
            if (++digit[pos] < cand_a[pos].size()) {
                exhausted = false;
                break;
            }
            digit[pos] = 0;
        }
        if (exhausted) break;
    }
    Rational value(best_score, nq * nq);
    value.canonicalize();
    return {value, best};
}

void write_correlation(std::ostream& out, const Correlation& p) {
    const std::size_t nq = p.num_questions(), na = p.num_answers();
    out << "corr " << nq << ' ' << na << '\n';
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y)
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b)
                    if (sgn(p(x, y, a, b)) != 0)
                        out << x << ' ' << y << ' ' << a << ' ' << b << ' ' << to_fraction_string(p(x, y, a, b)) << '\n';
}

Correlation read_correlation(std::istream& in) {
    std::string tag;
    std::size_t nq = 0, na = 0;
    if (!(in >> tag >> nq >> na) || tag != "corr") throw InputError("bad correlation header");
    Correlation p(nq, na);
    std::size_t x, y, a, b;
    std::string q;
    while (in >> x >> y >> a >> b >> q) {
        if (x >= nq || y >= nq || a >= na || b >= na) throw InputError("correlation entry out of range");
        p(x, y, a, b) = parse_rational(q);
    }
    if (!in.eof()) throw InputError("malformed correlation entry");
    return p;
}

}  // namespace matchgames
