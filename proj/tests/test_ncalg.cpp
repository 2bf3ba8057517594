#include "matchgames/correlation.hpp"
#include "matchgames/errors.hpp"
#include "matchgames/game.hpp"
#include "matchgames/ncalg.hpp"
#include "matchgames/qstrat.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace matchgames;

namespace {

NCPolynomial a(std::size_t n, std::size_t i) { return NCPolynomial::alice(n, i); }
NCPolynomial b(std::size_t n, std::size_t i) { return NCPolynomial::bob(n, i); }
NCPolynomial one(std::size_t n) { return NCPolynomial::constant(n, 1); }

NCWord random_word(std::size_t arity, std::size_t length, std::mt19937_64& rng) {
    NCWord w;
    for (std::size_t i = 0; i < length; ++i)
        w.push_back({static_cast<bool>(rng() % 2), static_cast<std::uint16_t>(rng() % arity)});
    return w;
}

// Rewrites by applying a randomly chosen applicable rule until none applies:
// cancel an adjacent equal pair, or move a b-letter right past an a-letter.
NCWord random_order_rewrite(NCWord w, std::mt19937_64& rng) {
    for (;;) {
        std::vector<std::pair<std::size_t, bool>> moves;  // (position, cancel?)
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == w[i + 1]) moves.push_back({i, true});
            if (w[i].bob && !w[i + 1].bob) moves.push_back({i, false});
        }
        if (moves.empty()) return w;
        const auto [pos, cancel] = moves[rng() % moves.size()];
        if (cancel)
            w.erase(w.begin() + pos, w.begin() + pos + 2);
        else
            std::swap(w[pos], w[pos + 1]);
    }
}

NCPolynomial random_polynomial(std::size_t arity, std::mt19937_64& rng) {
    NCPolynomial p(arity);
    const int terms = 1 + rng() % 5;
    for (int t = 0; t < terms; ++t) {
        Rational c(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4);
        c.canonicalize();
        p.add_term(random_word(arity, rng() % 5, rng), c);
    }
    return p;
}

double residual_norm(const SosIdentity& id, std::size_t dim, std::uint64_t seed) {
    const std::size_t n = id.lhs.arity();
    std::vector<CMatrix> alice, bob;
    for (std::size_t i = 0; i < n; ++i) {
        alice.push_back(random_involution(dim, seed + 2 * i));
        bob.push_back(random_involution(dim, seed + 2 * i + 1));
    }
    CMatrix r = instantiate(id.lhs, alice, bob);
    for (const auto& t : id.terms) {
        const CMatrix s = instantiate(t.square_root, alice, bob);
        r -= to_double(t.coeff) * s * s;
    }
    return r.norm();
}

}  // namespace

TEST_CASE("multiplication examples") {
    CHECK(a(2, 0) * a(2, 0) == one(2));
    CHECK(b(2, 0) * a(2, 0) == a(2, 0) * b(2, 0));
    NCPolynomial expected = NCPolynomial::constant(2, 2);
    expected.add_term({{false, 0}, {true, 0}}, 2);
    const NCPolynomial s = a(2, 0) + b(2, 0);
    CHECK(s * s == expected);
    CHECK((b(2, 0) * a(2, 0)).terms().begin()->first == NCWord{{false, 0}, {true, 0}});
}

TEST_CASE("adjoint examples") {
    CHECK(adjoint(a(2, 0) * b(2, 1)) == a(2, 0) * b(2, 1));
    CHECK(adjoint(a(2, 0) * a(2, 1)) == a(2, 1) * a(2, 0));
    std::mt19937_64 rng(61);
    for (int t = 0; t < 200; ++t) {
        const NCPolynomial p = random_polynomial(3, rng);
        REQUIRE(adjoint(adjoint(p)) == p);
        const NCPolynomial q = random_polynomial(3, rng);
        REQUIRE(adjoint(p * q) == adjoint(q) * adjoint(p));
    }
}

TEST_CASE("normal form is independent of rewrite order") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 2000; ++t) {
        const NCWord w = random_word(3, rng() % 10, rng);
        const NCWord n = normalize(w);
        REQUIRE(random_order_rewrite(w, rng) == n);
        REQUIRE(random_order_rewrite(w, rng) == n);
        REQUIRE(normalize(n) == n);
    }
}

TEST_CASE("ring laws hold") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 100; ++t) {
        const NCPolynomial p = random_polynomial(2, rng), q = random_polynomial(2, rng), r = random_polynomial(2, rng);
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
        REQUIRE(p - p == NCPolynomial(2));
        REQUIRE(nc_scale(p, 3) == p + p + p);
        REQUIRE(nc_add(p, q) == q + p);
        REQUIRE(nc_multiply(p, q) == p * q);
    }
}

TEST_CASE("published K32 decomposition does not reproduce its left-hand side") {
    const SosIdentity id = k32_published_sos();
    CHECK_FALSE(verify_sos(id.lhs, id.terms));
    const NCPolynomial r = sos_residual(id.lhs, id.terms);
    CHECK(r.coefficient({{false, 0}, {true, 0}}) == Rational(2, 3));
    CHECK(r.coefficient({{false, 0}, {false, 1}}) == Rational(1, 6));
    CHECK(residual_norm(id, 2, 5) > 1e-3);
}

TEST_CASE("corrected K32 decomposition holds exactly") {
    const SosIdentity id = k32_corrected_sos();
    CHECK(verify_sos(id.lhs, id.terms));
    CHECK(id.lhs == k32_published_sos().lhs);
    CHECK(id.lhs == NCPolynomial::constant(3, 15) - kn2_bias_polynomial(3));
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        for (std::size_t dim : {2, 3, 4}) CHECK(residual_norm(id, dim, 100 * seed) < 1e-9);
}

TEST_CASE("perturbed decompositions fail") {
    for (const SosIdentity& id : {k32_published_sos(), k32_corrected_sos()}) {
        auto terms = id.terms;
        terms.back().coeff = Rational(1, 6);
        CHECK_FALSE(verify_sos(id.lhs, terms));
        for (std::size_t i = 0; i < id.terms.size(); ++i) {
            auto bumped = id.terms;
            bumped[i].coeff += Rational(1, 100);
            CHECK_FALSE(verify_sos(id.lhs, bumped));
        }
    }
    for (std::size_t n = 2; n <= 6; ++n) {
        const SosIdentity id = sync_sos_identity(n);
        auto terms = id.terms;
        terms[0].coeff *= 2;
        CHECK_FALSE(verify_sos(id.lhs, terms));
    }
}

TEST_CASE("synchronous identity holds for n = 2..6") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const SosIdentity id = sync_sos_identity(n);
        REQUIRE(id.terms.size() == 1);
        CHECK(id.terms[0].coeff == Rational(1, 2 * n * n));
        CHECK(verify_sos(id.lhs, id.terms));
        CHECK(residual_norm(id, 3, 7 * n) < 1e-9);
    }
}

TEST_CASE("verify_sos rejects malformed terms") {
    const NCPolynomial lhs = one(2);
    CHECK_THROWS_AS(verify_sos(lhs, {{Rational(-1), a(2, 0)}}), InputError);
    CHECK_THROWS_AS(verify_sos(lhs, {{Rational(1), a(2, 0) * a(2, 1)}}), InputError);
    CHECK_THROWS_AS(verify_sos(lhs, {{Rational(1), a(3, 0)}}), InputError);
}

TEST_CASE("bias polynomial examples") {
    // n = 2: 4 - a1(-b1 + b2) - a2(b1 - b2)
    NCPolynomial expected = NCPolynomial::constant(2, 4) - a(2, 0) * (b(2, 1) - b(2, 0)) - a(2, 1) * (b(2, 0) - b(2, 1));
    CHECK(kn2_bias_polynomial(2) == expected);
    const NCPolynomial lhs = k32_published_sos().lhs;
    CHECK(kn2_bias_polynomial(3) - NCPolynomial::constant(3, 9) == NCPolynomial::constant(3, 6) - lhs);
}

TEST_CASE("bias polynomial is invariant under relabelling") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const NCPolynomial p = kn2_bias_polynomial(n);
        std::vector<std::uint16_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint16_t>((i + 1) % n);
        NCPolynomial q(n);
        for (const auto& [w, c] : p.terms()) {
            NCWord moved = w;
            for (auto& g : moved) g.index = perm[g.index];
            q.add_term(moved, c);
        }
        CHECK(q == p);
    }
}

TEST_CASE("value table") {
    CHECK(kn2_value_table(3).classical == Rational(7, 9));
    CHECK(kn2_value_table(3).quantum == Rational(5, 6));
    CHECK(kn2_value_table(3).quantum_synchronous == Rational(5, 6));
    CHECK(kn2_value_table(4).classical == Rational(3, 4));
    CHECK(kn2_value_table(4).quantum == Rational(3, 4));
    CHECK(kn2_value_table(4).quantum_synchronous == Rational(3, 4));
    CHECK(kn2_value_table(5).classical == Rational(4, 5));
    CHECK(kn2_value_table(5).quantum == Rational(4, 5));
    CHECK(kn2_value_table(5).quantum_synchronous == Rational(7, 10));
    for (std::size_t n = 2; n <= 6; ++n)
        CHECK(kn2_value_table(n).classical == classical_value(bpm_game(complete_bipartite(n, 2))).value);
    CHECK_THROWS_AS(kn2_value_table(1), InputError);
}

TEST_CASE("polynomial text format round-trips") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 50; ++t) {
        const NCPolynomial p = random_polynomial(3, rng);
        std::ostringstream out;
        write_polynomial(out, p);
        std::istringstream in(out.str());
        const NCPolynomial back = read_polynomial(in);
        REQUIRE(back == p);
    }
    std::istringstream bad("ncpoly 2\n1/2 * a3\n");
    CHECK_THROWS_AS(read_polynomial(bad), InputError);
}
