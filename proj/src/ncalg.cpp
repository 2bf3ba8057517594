#include "matchgames/ncalg.hpp"

#include "matchgames/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace matchgames {

namespace {

void cancel_into(NCWord& out, Generator g) {
    if (!out.empty() && out.back() == g)
        out.pop_back();
    else
        out.push_back(g);
}

void check_arity(const NCPolynomial& p, const NCPolynomial& q) {
    if (p.arity() != q.arity()) throw InputError("polynomials over different generator sets");
}

}  // namespace

NCWord normalize(const NCWord& word) {
    // Alice and Bob letters commute, so each party's letters keep their
    // relative order; cancelling adjacent repeats within each party then
    // reaches the unique irreducible form.
    NCWord alice, bob;
    for (auto g : word) cancel_into(g.bob ? bob : alice, g);
    alice.insert(alice.end(), bob.begin(), bob.end());
    return alice;
}

NCPolynomial NCPolynomial::constant(std::size_t arity, const Rational& c) {
    NCPolynomial p(arity);
    p.add_term({}, c);
    return p;
}

NCPolynomial NCPolynomial::alice(std::size_t arity, std::size_t i) {
    if (i >= arity) throw InputError("generator index out of range");
    NCPolynomial p(arity);
    p.add_term({Generator{false, static_cast<std::uint16_t>(i)}}, 1);
    return p;
}

NCPolynomial NCPolynomial::bob(std::size_t arity, std::size_t j) {
    if (j >= arity) throw InputError("generator index out of range");
    NCPolynomial p(arity);
    p.add_term({Generator{true, static_cast<std::uint16_t>(j)}}, 1);
    return p;
}

Rational NCPolynomial::coefficient(const NCWord& word) const {
    auto it = terms_.find(normalize(word));
    return it == terms_.end() ? Rational(0) : it->second;
}

void NCPolynomial::add_term(const NCWord& word, const Rational& c) {
    if (sgn(c) == 0) return;
    for (auto g : word)
        if (g.index >= arity_) throw InputError("generator index out of range");
    NCWord w = normalize(word);
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

NCPolynomial nc_add(const NCPolynomial& p, const NCPolynomial& q) {
    check_arity(p, q);
    NCPolynomial r = p;
    for (const auto& [w, c] : q.terms()) r.add_term(w, c);
    return r;
}

NCPolynomial nc_scale(const NCPolynomial& p, const Rational& c) {
    NCPolynomial r(p.arity());
    for (const auto& [w, k] : p.terms()) r.add_term(w, k * c);
    return r;
}

NCPolynomial nc_multiply(const NCPolynomial& p, const NCPolynomial& q) {
    check_arity(p, q);
    NCPolynomial r(p.arity());
    NCWord joined;
    for (const auto& [w1, c1] : p.terms())
        for (const auto& [w2, c2] : q.terms()) {
            joined = w1;
            joined.insert(joined.end(), w2.begin(), w2.end());
            r.add_term(joined, c1 * c2);
        }
    return r;
}

NCPolynomial adjoint(const NCPolynomial& p) {
    NCPolynomial r(p.arity());
    for (const auto& [w, c] : p.terms()) r.add_term(NCWord(w.rbegin(), w.rend()), c);
    return r;
}

NCPolynomial operator+(const NCPolynomial& p, const NCPolynomial& q) { return nc_add(p, q); }
NCPolynomial operator-(const NCPolynomial& p) { return nc_scale(p, -1); }
NCPolynomial operator-(const NCPolynomial& p, const NCPolynomial& q) { return nc_add(p, -q); }
NCPolynomial operator*(const NCPolynomial& p, const NCPolynomial& q) { return nc_multiply(p, q); }
NCPolynomial operator*(const Rational& c, const NCPolynomial& p) { return nc_scale(p, c); }

NCPolynomial sos_residual(const NCPolynomial& lhs, const std::vector<SosTerm>& terms) {
    NCPolynomial r = lhs;
    for (const auto& t : terms) r = r - t.coeff * (t.square_root * t.square_root);
    return r;
}

bool verify_sos(const NCPolynomial& lhs, const std::vector<SosTerm>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (t.square_root.arity() != lhs.arity()) throw InputError("SOS term over a different generator set");
        if (sgn(t.coeff) <= 0) throw InputError("SOS term " + std::to_string(i + 1) + " has a nonpositive coefficient");
        if (adjoint(t.square_root) != t.square_root)
            throw InputError("SOS term " + std::to_string(i + 1) + " is not self-adjoint");
    }
    return sos_residual(lhs, terms).is_zero();
}

namespace {

NCPolynomial sum_alice(std::size_t n, int sign_b) {
    NCPolynomial s(n);
    for (std::size_t v = 0; v < n; ++v) {
        s = s + NCPolynomial::alice(n, v);
        if (sign_b != 0) s = s + Rational(sign_b) * NCPolynomial::bob(n, v);
    }
    return s;
}

void check_kn2(std::size_t n) {
    if (n < 2) throw InputError("K_{n,2} needs n >= 2");
}

// a_i - a_j - b_i + b_j over three generators (0-based).
NCPolynomial k32_pair_term(std::size_t i, std::size_t j) {
    return NCPolynomial::alice(3, i) - NCPolynomial::alice(3, j) - NCPolynomial::bob(3, i) + NCPolynomial::bob(3, j);
}

NCPolynomial k32_lhs() {
    // 6 - (a1(b1 - b2 - b3) + a2(-b1 + b2 - b3) + a3(-b1 - b2 + b3))
    NCPolynomial inner(3);
    for (std::size_t v = 0; v < 3; ++v) {
        NCPolynomial row(3);
        for (std::size_t w = 0; w < 3; ++w) row = row + Rational(v == w ? 1 : -1) * NCPolynomial::bob(3, w);
        inner = inner + NCPolynomial::alice(3, v) * row;
    }
    return NCPolynomial::constant(3, 6) - inner;
}

}  // namespace

NCPolynomial kn2_bias_polynomial(std::size_t n) {
    check_kn2(n);
    NCPolynomial p = NCPolynomial::constant(n, Rational(n * n));
    for (std::size_t v1 = 0; v1 < n; ++v1) {
        NCPolynomial row(n);
        for (std::size_t v2 = 0; v2 < n; ++v2) row = row + Rational(v1 == v2 ? -1 : 1) * NCPolynomial::bob(n, v2);
        p = p - NCPolynomial::alice(n, v1) * row;
    }
    return p;
}

NCPolynomial kn2_win_polynomial(std::size_t n) {
    return Rational(1, 2 * n * n) * kn2_bias_polynomial(n);
}

NCPolynomial kn2_sync_win_polynomial(std::size_t n) {
    check_kn2(n);
    NCPolynomial inner(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            inner = inner + Rational(v == w ? 1 : -1) * (NCPolynomial::alice(n, v) * NCPolynomial::alice(n, w));
    return Rational(1, 2 * n * n) * inner + NCPolynomial::constant(n, Rational(1, 2));
}

SosIdentity sync_sos_identity(std::size_t n) {
    check_kn2(n);
    NCPolynomial lhs = NCPolynomial::constant(n, Rational(1, 2) + Rational(1, n)) - kn2_sync_win_polynomial(n);
    return {lhs, {{Rational(1, 2 * n * n), sum_alice(n, 0)}}};
}

SosIdentity k32_published_sos() {
    return {k32_lhs(),
            {{Rational(1, 2), k32_pair_term(0, 2)},
             {Rational(1, 2), k32_pair_term(0, 1)},
             {Rational(1, 4), sum_alice(3, 1)},
             {Rational(1, 12), sum_alice(3, -1)}}};
}

SosIdentity k32_corrected_sos() {
    return {k32_lhs(),
            {{Rational(1, 3), k32_pair_term(0, 1)},
             {Rational(1, 3), k32_pair_term(0, 2)},
             {Rational(1, 3), k32_pair_term(1, 2)},
             {Rational(1, 4), sum_alice(3, 1)},
             {Rational(1, 12), sum_alice(3, -1)}}};
}

Kn2Values kn2_value_table(std::size_t n) {
    check_kn2(n);
    const Rational sync = Rational(1, 2) + Rational(1, n);
    if (n == 2) return {1, 1, sync};
    if (n == 3) return {Rational(7, 9), Rational(5, 6), sync};
    const Rational v = 1 - Rational(1, n);
    return {v, v, sync};
}

std::string word_to_string(const NCWord& word) {
    if (word.empty()) return "1";
    std::string s;
    for (auto g : word) {
        if (!s.empty()) s += ' ';
        s += (g.bob ? 'b' : 'a') + std::to_string(g.index + 1);
    }
    return s;
}

void write_polynomial(std::ostream& out, const NCPolynomial& p) {
    out << "ncpoly " << p.arity() << '\n';
    for (const auto& [w, c] : p.terms()) out << to_fraction_string(c) << " * " << word_to_string(w) << '\n';
}

NCPolynomial read_polynomial(std::istream& in) {
    std::string line, tag;
    std::size_t n = 0;
    if (!std::getline(in, line)) throw InputError("empty polynomial input");
    {
        std::istringstream head(line);
        if (!(head >> tag >> n) || tag != "ncpoly") throw InputError("bad polynomial header: " + line);
    }
    NCPolynomial p(n);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string coeff, star, tok;
        if (!(ls >> coeff)) continue;
        if (!(ls >> star) || star != "*") throw InputError("expected `coeff * word`: " + line);
        NCWord w;
        while (ls >> tok) {
            if (tok == "1") continue;
            if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b')) throw InputError("bad generator: " + tok);
            std::size_t idx = 0;
            try {
                idx = std::stoul(tok.substr(1));
            } catch (const std::exception&) {
                throw InputError("bad generator: " + tok);
            }
            if (idx == 0 || idx > n) throw InputError("generator out of range: " + tok);
            w.push_back({tok[0] == 'b', static_cast<std::uint16_t>(idx - 1)});
        }
        p.add_term(w, parse_rational(coeff));
    }
    return p;
}

}  // namespace matchgames
