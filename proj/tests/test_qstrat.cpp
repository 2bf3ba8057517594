#include "matchgames/errors.hpp"
#include "matchgames/game.hpp"
#include "matchgames/ncalg.hpp"
#include "matchgames/nonsignaling.hpp"
#include "matchgames/qstrat.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

using namespace matchgames;

namespace {

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

// One-dimensional strategy in which Alice answers fa[x] and Bob fb[y].
QuantumStrategy embed(const std::vector<std::size_t>& fa, const std::vector<std::size_t>& fb, std::size_t na) {
    QuantumStrategy s;
    s.state = CVector::Ones(1);
    for (std::size_t x = 0; x < fa.size(); ++x) {
        s.alice.emplace_back();
        s.bob.emplace_back();
        for (std::size_t a = 0; a < na; ++a) {
            s.alice.back().push_back(CMatrix::Constant(1, 1, a == fa[x] ? 1.0 : 0.0));
            s.bob.back().push_back(CMatrix::Constant(1, 1, a == fb[x] ? 1.0 : 0.0));
        }
    }
    return s;
}

// Random PVM with `answers` outcomes on C^d, split along a random unitary.
std::vector<CMatrix> random_pvm(std::size_t d, std::size_t answers, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<CMatrix> qr(m);
    const CMatrix u = qr.householderQ();
    std::vector<CMatrix> out(answers, CMatrix::Zero(d, d));
    for (std::size_t k = 0; k < d; ++k) {
        const CVector col = u.col(k);
        out[rng() % answers] += col * col.adjoint();
    }
    return out;
}

QuantumStrategy random_strategy(std::size_t nq, std::size_t na, std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    QuantumStrategy s;
    s.dim_alice = s.dim_bob = d;
    s.state = CVector(d * d);
    for (Eigen::Index i = 0; i < s.state.size(); ++i) s.state(i) = {g(rng), g(rng)};
    s.state.normalize();
    for (std::size_t x = 0; x < nq; ++x) {
        s.alice.push_back(random_pvm(d, na, rng));
        s.bob.push_back(random_pvm(d, na, rng));
    }
    return s;
}

// K_{n,2} strategy from observables: question v answers edge 2v on +1, 2v+1 on -1.
QuantumStrategy from_observables(const std::vector<CMatrix>& alice, const std::vector<CMatrix>& bob,
                                 const CVector& state) {
    const std::size_t n = alice.size();
    const std::size_t d = alice[0].rows();
    QuantumStrategy s;
    s.dim_alice = s.dim_bob = d;
    s.state = state;
    const CMatrix id = CMatrix::Identity(d, d);
    for (std::size_t v = 0; v < n; ++v) {
        s.alice.emplace_back(2 * n, CMatrix::Zero(d, d));
        s.bob.emplace_back(2 * n, CMatrix::Zero(d, d));
        s.alice[v][2 * v] = (id + alice[v]) / 2.0;
        s.alice[v][2 * v + 1] = (id - alice[v]) / 2.0;
        s.bob[v][2 * v] = (id + bob[v]) / 2.0;
        s.bob[v][2 * v + 1] = (id - bob[v]) / 2.0;
    }
    return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double sum_on_state(const QuantumStrategy& s, bool bob) {
    CMatrix sum = CMatrix::Zero(bob ? s.dim_bob : s.dim_alice, bob ? s.dim_bob : s.dim_alice);
    for (const auto& m : kn2_observables(s, bob)) sum += m;
    const CMatrix full = bob ? kron(CMatrix::Identity(s.dim_alice, s.dim_alice), sum)
                             : kron(sum, CMatrix::Identity(s.dim_bob, s.dim_bob));
    return (full * s.state).norm();
}

}  // namespace

TEST_CASE("quantum winning probability examples") {
    const Game k4 = pm_game(complete_graph(4));
    CHECK(quantum_win_prob(k4, embed({0, 0, 5, 5}, {0, 0, 5, 5}, 6)) == doctest::Approx(1.0).epsilon(1e-12));
    const Game k32 = bpm_game(complete_bipartite(3, 2));
    CHECK(std::abs(quantum_win_prob(k32, k32_optimal_strategy()) - 5.0 / 6.0) < 1e-9);
    for (std::size_t n : {2, 4, 5}) {
        const Game game = bpm_game(complete_bipartite(n, 2));
        CHECK(std::abs(quantum_win_prob(game, trivial_strategy(n)) - (1.0 - 1.0 / n)) < 1e-12);
    }
}

TEST_CASE("sum-zero observables") {
    for (std::size_t n : {2, 3, 4, 5, 6}) {
        const auto obs = sum_zero_observables(n);
        REQUIRE(obs.size() == n);
        CMatrix sum = CMatrix::Zero(2, 2);
        for (const auto& o : obs) {
            CHECK((o.matrix * o.matrix - CMatrix::Identity(2, 2)).norm() < 1e-12);
            CHECK((o.matrix - o.matrix.adjoint()).norm() < 1e-12);
            CHECK(std::abs(o.matrix.trace()) < 1e-12);
            sum += o.matrix;
        }
        CHECK(sum.norm() < 1e-12);
    }
    const auto two = sum_zero_observables(2);
    CHECK((two[0].matrix - pauli_x()).norm() < 1e-12);
    CHECK((two[1].matrix + pauli_x()).norm() < 1e-12);
}

TEST_CASE("optimal K32 strategy") {
    const QuantumStrategy s = k32_optimal_strategy();
    CHECK_NOTHROW(validate_strategy(s, 3, 6));
    const auto corr = correlation_of(s, 3, 6);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b)
                if (a != b) CHECK(corr(x, x, a, b) < 1e-9);
    CMatrix sa = CMatrix::Zero(2, 2), sb = CMatrix::Zero(2, 2);
    for (const auto& m : kn2_observables(s, false)) sa += m;
    for (const auto& m : kn2_observables(s, true)) sb += m;
    CHECK(sa.norm() < 1e-12);
    CHECK(sb.norm() < 1e-12);
    CHECK(corr.nonsignaling_residual < 1e-9);
    CHECK(evaluate_strategy(bpm_game(complete_bipartite(3, 2)), s).imaginary_residue < 1e-12);
}

TEST_CASE("correlation tables of strategies") {
    const auto det = correlation_of(embed({1, 0}, {0, 1}, 2), 2, 2);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const double expected = (a == (x == 0 ? 1u : 0u) && b == (y == 0 ? 0u : 1u)) ? 1.0 : 0.0;
                    CHECK(det(x, y, a, b) == doctest::Approx(expected));
                }
    std::mt19937_64 rng(79);
    for (int t = 0; t < 20; ++t) {
        const QuantumStrategy s = random_strategy(3, 3, 2 + t % 3, rng);
        CHECK_NOTHROW(validate_strategy(s, 3, 3));
        const auto corr = correlation_of(s, 3, 3);
        CHECK(corr.normalization_residual < 1e-9);
        CHECK(corr.nonsignaling_residual < 1e-9);
    }
}

TEST_CASE("strategy validation rejects broken strategies") {
    QuantumStrategy s = k32_optimal_strategy();
    CHECK_THROWS_AS(validate_strategy(s, 4, 6), InputError);
    s.alice[0][0] *= 2.0;
    CHECK_THROWS_AS(validate_strategy(s, 3, 6), InputError);
    QuantumStrategy t = k32_optimal_strategy();
    t.state *= 2.0;
    CHECK_THROWS_AS(validate_strategy(t, 3, 6), InputError);
}

TEST_CASE("quantum values never exceed nonsignaling values") {
    std::mt19937_64 rng(83);
    const Game k32 = bpm_game(complete_bipartite(3, 2));
    const double ns = to_double(ns_value(k32).value);
    CHECK(quantum_win_prob(k32, k32_optimal_strategy()) <= ns + 1e-9);
    const Game c5 = pm_game(cycle_graph(5));
    const double ns_c5 = to_double(ns_value(c5).value);
    for (int t = 0; t < 20; ++t)
        CHECK(quantum_win_prob(c5, random_strategy(5, 5, 2, rng)) <= ns_c5 + 1e-9);
    const Game k3 = pm_game(complete_graph(3));
    const double ns_k3 = to_double(ns_value(k3).value);
    for (int t = 0; t < 20; ++t) CHECK(quantum_win_prob(k3, random_strategy(3, 3, 2, rng)) <= ns_k3 + 1e-9);
}

TEST_CASE("synchronous strategies reach one half plus one over n") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const QuantumStrategy s = kn2_synchronous_strategy(sum_zero_observables(n));
        CHECK(std::abs(quantum_win_prob(bpm_game(complete_bipartite(n, 2)), s) - (0.5 + 1.0 / n)) < 1e-9);
    }
}

TEST_CASE("bias polynomial predicts strategy values") {
    std::mt19937_64 rng(89);
    std::normal_distribution<double> g;
    for (std::size_t n = 2; n <= 4; ++n) {
        const Game game = bpm_game(complete_bipartite(n, 2));
        const NCPolynomial w = kn2_win_polynomial(n);
        for (int t = 0; t < 10; ++t) {
            const std::size_t d = 2 + t % 2;
            std::vector<CMatrix> alice, bob;
            for (std::size_t v = 0; v < n; ++v) {
                alice.push_back(random_involution(d, rng()));
                bob.push_back(random_involution(d, rng()));
            }
            CVector psi(d * d);
            for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = {g(rng), g(rng)};
            psi.normalize();
            const QuantumStrategy s = from_observables(alice, bob, psi);
            const double predicted = (psi.adjoint() * instantiate(w, alice, bob) * psi)(0, 0).real();
            CHECK(std::abs(predicted - quantum_win_prob(game, s)) < 1e-12);
        }
    }
}

TEST_CASE("seesaw sweeps respect the quantum values") {
    for (std::size_t n : {3, 4, 5}) {
        SeesawOptions opt;
        opt.restarts = 30;
        opt.iterations = 100;
        const auto res = seesaw_sweep(bpm_game(complete_bipartite(n, 2)), opt);
        const double bound = to_double(kn2_value_table(n).quantum);
        REQUIRE(res.values.size() == 30);
        CHECK(res.seeds.front() == 0);
        CHECK(res.seeds.back() == 29);
        for (double v : res.values) CHECK(v <= bound + 1e-6);
        CHECK(res.best_value > bound - 1e-6);
    }
}

TEST_CASE("near-optimal K32 strategies annihilate the state with the observable sums") {
    SeesawOptions opt;
    opt.restarts = 20;
    const auto res = seesaw_sweep(bpm_game(complete_bipartite(3, 2)), opt);
    REQUIRE(res.best_value > 5.0 / 6.0 - 1e-9);
    CHECK(sum_on_state(res.best, false) < 1e-3);
    CHECK(sum_on_state(res.best, true) < 1e-3);
    CHECK(sum_on_state(k32_optimal_strategy(), false) < 1e-12);
}

TEST_CASE("seesaw is reproducible for a fixed seed") {
    SeesawOptions opt;
    opt.restarts = 6;
    opt.seed = 42;
    const Game game = bpm_game(complete_bipartite(4, 2));
    const auto first = seesaw_sweep(game, opt);
    opt.threads = 1;
    const auto second = seesaw_sweep(game, opt);
    CHECK(first.values == second.values);
}

TEST_CASE("strategy text format round-trips") {
    const QuantumStrategy s = k32_optimal_strategy();
    std::ostringstream out;
    write_strategy(out, s);
    std::istringstream in(out.str());
    const QuantumStrategy back = read_strategy(in);
    CHECK(back.dim_alice == s.dim_alice);
    CHECK((back.state - s.state).norm() == 0.0);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t a = 0; a < 6; ++a) {
            CHECK((back.alice[x][a] - s.alice[x][a]).norm() == 0.0);
            CHECK((back.bob[x][a] - s.bob[x][a]).norm() == 0.0);
        }
}
