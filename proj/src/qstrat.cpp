#include "matchgames/qstrat.hpp"

#include "matchgames/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace matchgames {

namespace {

using Complex = std::complex<double>;

double operator_norm(const CMatrix& m) {
    if (m.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// The state as a dA x dB matrix, Psi(i, j) = psi[i * dB + j].
CMatrix state_matrix(const QuantumStrategy& s) {
    CMatrix psi(s.dim_alice, s.dim_bob);
    for (std::size_t i = 0; i < s.dim_alice; ++i)
        for (std::size_t j = 0; j < s.dim_bob; ++j) psi(i, j) = s.state(i * s.dim_bob + j);
    return psi;
}

// Projector onto the span of eigenvectors of h with positive eigenvalue.
CMatrix positive_part_projector(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
    CMatrix p = CMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        if (es.eigenvalues()(k) > 0) p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    return p;
}

void check_shape(const QuantumStrategy& s, std::size_t nq, std::size_t na) {
    if (static_cast<std::size_t>(s.state.size()) != s.dim_alice * s.dim_bob)
        throw InputError("state length does not equal dA * dB");
    if (s.alice.size() != nq || s.bob.size() != nq) throw InputError("strategy question count does not match");
    for (const auto* side : {&s.alice, &s.bob}) {
        const std::size_t d = side == &s.alice ? s.dim_alice : s.dim_bob;
        for (const auto& pvm : *side) {
            if (pvm.size() != na) throw InputError("measurement arity does not match the answer count");
            for (const auto& p : pvm)
                if (static_cast<std::size_t>(p.rows()) != d || static_cast<std::size_t>(p.cols()) != d)
                    throw InputError("projector dimension does not match");
        }
    }
}

}  // namespace

void validate_strategy(const QuantumStrategy& s, std::size_t nq, std::size_t na, const StrategyTolerances& tol) {
    check_shape(s, nq, na);
    if (std::abs(s.state.norm() - 1.0) > tol.state_norm) throw InputError("state is not a unit vector");
    for (const auto* side : {&s.alice, &s.bob}) {
        const char* who = side == &s.alice ? "Alice" : "Bob";
        const std::size_t d = side == &s.alice ? s.dim_alice : s.dim_bob;
        for (std::size_t x = 0; x < nq; ++x) {
            CMatrix total = CMatrix::Zero(d, d);
            for (std::size_t a = 0; a < na; ++a) {
                const auto& p = (*side)[x][a];
                if (operator_norm(p - p.adjoint()) > tol.projector || operator_norm(p * p - p) > tol.projector)
                    throw InputError(std::string(who) + " operator for question " + std::to_string(x) + ", answer " +
                                     std::to_string(a) + " is not a projector");
                total += p;
            }
            if (operator_norm(total - CMatrix::Identity(d, d)) > tol.completeness)
                throw InputError(std::string(who) + " projectors for question " + std::to_string(x) +
                                 " do not sum to the identity");
        }
    }
}

QuantumEvaluation evaluate_strategy(const Game& game, const QuantumStrategy& s) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    check_shape(s, nq, na);
    const CMatrix psi = state_matrix(s);
    Complex total = 0;
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a) {
            const CMatrix left = psi.adjoint() * s.alice[x][a] * psi;
            for (std::size_t y = 0; y < nq; ++y)
                for (std::size_t b = 0; b < na; ++b)
                    if (game.wins(x, y, a, b)) total += left.cwiseProduct(s.bob[y][b]).sum();
        }
    total /= static_cast<double>(nq * nq);
    return {total.real(), std::abs(total.imag())};
}

double quantum_win_prob(const Game& game, const QuantumStrategy& s) { return evaluate_strategy(game, s).value; }

FloatCorrelation correlation_of(const QuantumStrategy& s, std::size_t nq, std::size_t na) {
    check_shape(s, nq, na);
    FloatCorrelation c{nq, na, std::vector<double>(nq * nq * na * na), 0, 0};
    const CMatrix psi = state_matrix(s);
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a) {
            const CMatrix left = psi.adjoint() * s.alice[x][a] * psi;
            for (std::size_t y = 0; y < nq; ++y)
                for (std::size_t b = 0; b < na; ++b)
                    c.table[((x * nq + y) * na + a) * na + b] = left.cwiseProduct(s.bob[y][b]).sum().real();
        }
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 0; y < nq; ++y) {
            double sum = 0;
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < na; ++b) sum += c(x, y, a, b);
            c.normalization_residual = std::max(c.normalization_residual, std::abs(sum - 1.0));
        }
    auto alice_marginal = [&](std::size_t x, std::size_t y, std::size_t a) {
        double m = 0;
        for (std::size_t b = 0; b < na; ++b) m += c(x, y, a, b);
        return m;
    };
    auto bob_marginal = [&](std::size_t x, std::size_t y, std::size_t b) {
        double m = 0;
        for (std::size_t a = 0; a < na; ++a) m += c(x, y, a, b);
        return m;
    };
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t y = 1; y < nq; ++y)
            for (std::size_t a = 0; a < na; ++a) {
                c.nonsignaling_residual =
                    std::max(c.nonsignaling_residual, std::abs(alice_marginal(x, y, a) - alice_marginal(x, 0, a)));
                c.nonsignaling_residual =
                    std::max(c.nonsignaling_residual, std::abs(bob_marginal(y, x, a) - bob_marginal(0, x, a)));
            }
    return c;
}

std::vector<Observable> sum_zero_observables(std::size_t n) {
    if (n < 2) throw InputError("need at least two observables");
    CMatrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    if (n == 2) return {{x}, {-x}};
    std::vector<Observable> out;
    for (std::size_t v = 0; v < n; ++v) {
        const double t = 2 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(n);
        out.push_back({std::cos(t) * x + std::sin(t) * z});
    }
    return out;
}

QuantumStrategy kn2_synchronous_strategy(const std::vector<Observable>& observables) {
    const std::size_t n = observables.size();
    if (n < 2) throw InputError("need at least two observables");
    const std::size_t d = observables[0].matrix.rows();
    QuantumStrategy s;
    s.dim_alice = s.dim_bob = d;
    s.state = CVector::Zero(d * d);
    for (std::size_t i = 0; i < d; ++i) s.state(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    const CMatrix id = CMatrix::Identity(d, d), zero = CMatrix::Zero(d, d);
    s.alice.assign(n, std::vector<CMatrix>(2 * n, zero));
    s.bob.assign(n, std::vector<CMatrix>(2 * n, zero));
    for (std::size_t v = 0; v < n; ++v) {
        const CMatrix& a = observables[v].matrix;
        s.alice[v][2 * v] = (id + a) / 2.0;
        s.alice[v][2 * v + 1] = (id - a) / 2.0;
        s.bob[v][2 * v] = s.alice[v][2 * v].conjugate();
        s.bob[v][2 * v + 1] = s.alice[v][2 * v + 1].conjugate();
    }
    return s;
}

QuantumStrategy k32_optimal_strategy() { return kn2_synchronous_strategy(sum_zero_observables(3)); }

QuantumStrategy trivial_strategy(std::size_t n) {
    if (n < 2) throw InputError("trivial strategy needs n >= 2");
    QuantumStrategy s;
    s.state = CVector::Ones(1);
    const CMatrix one = CMatrix::Identity(1, 1), zero = CMatrix::Zero(1, 1);
    s.alice.assign(n, std::vector<CMatrix>(2 * n, zero));
    s.bob.assign(n, std::vector<CMatrix>(2 * n, zero));
    for (std::size_t v = 0; v < n; ++v) {
        s.alice[v][2 * v] = one;
        s.bob[v][2 * v + 1] = one;
    }
    return s;
}

std::vector<CMatrix> kn2_observables(const QuantumStrategy& s, bool bob_side) {
    const auto& side = bob_side ? s.bob : s.alice;
    std::vector<CMatrix> out;
    for (std::size_t v = 0; v < side.size(); ++v) out.push_back(side[v].at(2 * v) - side[v].at(2 * v + 1));
    return out;
}

namespace {

CMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    CMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    return qr.householderQ() * CMatrix::Identity(d, d);
}

CMatrix random_involution(std::size_t d, std::mt19937_64& rng) {
    const CMatrix u = random_unitary(d, rng);
    std::bernoulli_distribution coin;
    CMatrix diag = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) diag(i, i) = coin(rng) ? 1.0 : -1.0;
    return u * diag * u.adjoint();
}

}  // namespace

CMatrix random_involution(std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_involution(d, rng);
}

CMatrix instantiate(const NCPolynomial& p, const std::vector<CMatrix>& alice, const std::vector<CMatrix>& bob) {
    if (alice.size() < p.arity() || bob.size() < p.arity()) throw InputError("not enough observables");
    const auto da = alice.empty() ? 1 : alice[0].rows();
    const auto db = bob.empty() ? 1 : bob[0].rows();
    CMatrix total = CMatrix::Zero(da * db, da * db);
    for (const auto& [word, coeff] : p.terms()) {
        CMatrix pa = CMatrix::Identity(da, da), pb = CMatrix::Identity(db, db);
        for (auto g : word) {
            if (g.bob)
                pb = pb * bob[g.index];
            else
                pa = pa * alice[g.index];
        }
        total += to_double(coeff) * kron(pa, pb);
    }
    return total;
}

namespace {

struct LiveAnswers {
    std::vector<std::vector<std::size_t>> alice, bob;
};

LiveAnswers live_answers(const Game& game) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    LiveAnswers live{std::vector<std::vector<std::size_t>>(nq), std::vector<std::vector<std::size_t>>(nq)};
    for (std::size_t x = 0; x < nq; ++x)
        for (std::size_t a = 0; a < na; ++a) {
            bool alice_live = false, bob_live = false;
            for (std::size_t y = 0; y < nq && !(alice_live && bob_live); ++y)
                for (std::size_t b = 0; b < na; ++b) {
                    alice_live = alice_live || game.wins(x, y, a, b);
                    bob_live = bob_live || game.wins(y, x, b, a);
                }
            if (alice_live) live.alice[x].push_back(a);
            if (bob_live) live.bob[x].push_back(a);
        }
    for (auto* side : {&live.alice, &live.bob})
        for (auto& answers : *side) {
            if (answers.size() > 2) throw InputError("seesaw supports at most two live answers per question");
            if (answers.empty()) answers.push_back(0);
        }
    return live;
}

// Writes a two-outcome measurement P, I - P onto the live answers.
void set_measurement(std::vector<CMatrix>& pvm, const std::vector<std::size_t>& live, const CMatrix& p) {
    const auto d = p.rows();
    for (auto& m : pvm) m.setZero(d, d);
    if (live.size() == 1) {
        pvm[live[0]] = CMatrix::Identity(d, d);
        return;
    }
    pvm[live[0]] = p;
    pvm[live[1]] = CMatrix::Identity(d, d) - p;
}

double seesaw_restart(const Game& game, const LiveAnswers& live, const SeesawOptions& opt, std::uint64_t seed,
                      QuantumStrategy& s) {
    const std::size_t nq = game.num_questions(), na = game.num_answers();
    const std::size_t da = opt.dim_alice, db = opt.dim_bob;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    s.dim_alice = da;
    s.dim_bob = db;
    s.state = CVector(da * db);
    for (Eigen::Index i = 0; i < s.state.size(); ++i) s.state(i) = Complex(normal(rng), normal(rng));
    s.state.normalize();
    s.alice.assign(nq, std::vector<CMatrix>(na, CMatrix::Zero(da, da)));
    s.bob.assign(nq, std::vector<CMatrix>(na, CMatrix::Zero(db, db)));
    for (std::size_t x = 0; x < nq; ++x) {
        set_measurement(s.alice[x], live.alice[x], (CMatrix::Identity(da, da) + random_involution(da, rng)) / 2.0);
        set_measurement(s.bob[x], live.bob[x], (CMatrix::Identity(db, db) + random_involution(db, rng)) / 2.0);
    }

    double value = quantum_win_prob(game, s);
    for (std::size_t it = 0; it < opt.iterations; ++it) {
        const double before = value;
        CMatrix psi = state_matrix(s);

        // Alice: M_{x,a} = sum_{y,b} V Psi B^T Psi^dagger.
        std::vector<CMatrix> bob_side(nq * na);
        for (std::size_t y = 0; y < nq; ++y)
            for (std::size_t b = 0; b < na; ++b) bob_side[y * na + b] = psi * s.bob[y][b].transpose() * psi.adjoint();
        for (std::size_t x = 0; x < nq; ++x) {
            if (live.alice[x].size() < 2) continue;
            CMatrix diff = CMatrix::Zero(da, da);
            for (std::size_t k = 0; k < 2; ++k) {
                const std::size_t a = live.alice[x][k];
                for (std::size_t y = 0; y < nq; ++y)
                    for (std::size_t b = 0; b < na; ++b)
                        if (game.wins(x, y, a, b)) diff += (k == 0 ? 1.0 : -1.0) * bob_side[y * na + b];
            }
            set_measurement(s.alice[x], live.alice[x], positive_part_projector(diff));
        }

        // Bob: N_{y,b} = sum_{x,a} V (Psi^dagger A Psi)^T.
        std::vector<CMatrix> alice_side(nq * na);
        for (std::size_t x = 0; x < nq; ++x)
            for (std::size_t a = 0; a < na; ++a)
                alice_side[x * na + a] = (psi.adjoint() * s.alice[x][a] * psi).transpose();
        for (std::size_t y = 0; y < nq; ++y) {
            if (live.bob[y].size() < 2) continue;
            CMatrix diff = CMatrix::Zero(db, db);
            for (std::size_t k = 0; k < 2; ++k) {
                const std::size_t b = live.bob[y][k];
                for (std::size_t x = 0; x < nq; ++x)
                    for (std::size_t a = 0; a < na; ++a)
                        if (game.wins(x, y, a, b)) diff += (k == 0 ? 1.0 : -1.0) * alice_side[x * na + a];
            }
            set_measurement(s.bob[y], live.bob[y], positive_part_projector(diff));
        }

        // State: top eigenvector of sum V A (x) B.
        CMatrix w = CMatrix::Zero(da * db, da * db);
        for (std::size_t x = 0; x < nq; ++x)
            for (std::size_t a = 0; a < na; ++a) {
                if (s.alice[x][a].isZero()) continue;
                CMatrix bob_sum = CMatrix::Zero(db, db);
                for (std::size_t y = 0; y < nq; ++y)
                    for (std::size_t b = 0; b < na; ++b)
                        if (game.wins(x, y, a, b)) bob_sum += s.bob[y][b];
                w += kron(s.alice[x][a], bob_sum);
            }
        Eigen::SelfAdjointEigenSolver<CMatrix> es((w + w.adjoint()) / 2.0);
        s.state = es.eigenvectors().col(es.eigenvalues().size() - 1).normalized();

        value = quantum_win_prob(game, s);
        if (value - before < 1e-13) break;
    }
    return value;
}

}  // namespace

SeesawResult seesaw_sweep(const Game& game, const SeesawOptions& opt) {
    const LiveAnswers live = live_answers(game);
    SeesawResult result;
    result.values.assign(opt.restarts, 0.0);
    result.seeds.resize(opt.restarts);
    for (std::size_t i = 0; i < opt.restarts; ++i) result.seeds[i] = opt.seed + i;
    std::vector<QuantumStrategy> strategies(opt.restarts);

    std::size_t workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(opt.restarts, 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < opt.restarts; i += workers)
                result.values[i] = seesaw_restart(game, live, opt, result.seeds[i], strategies[i]);
        });
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < opt.restarts; ++i)
        if (i == 0 || result.values[i] > result.best_value) {
            result.best_value = result.values[i];
            result.best = strategies[i];
        }
    return result;
}

namespace {

void write_matrix(std::ostream& out, const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j).real() << ' ' << m(i, j).imag();
        }
        out << '\n';
    }
}

CMatrix read_matrix(std::istream& in, std::size_t d) {
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double re, im;
            if (!(in >> re >> im)) throw InputError("truncated matrix");
            m(i, j) = Complex(re, im);
        }
    return m;
}

}  // namespace

void write_strategy(std::ostream& out, const QuantumStrategy& s) {
    const std::size_t nq = s.alice.size(), na = nq ? s.alice[0].size() : 0;
    out << std::setprecision(17);
    out << "strategy " << s.dim_alice << ' ' << s.dim_bob << ' ' << nq << ' ' << na << '\n';
    for (Eigen::Index i = 0; i < s.state.size(); ++i) out << s.state(i).real() << ' ' << s.state(i).imag() << '\n';
    for (const auto* side : {&s.alice, &s.bob})
        for (std::size_t x = 0; x < nq; ++x)
            for (std::size_t a = 0; a < na; ++a) {
                out << (side == &s.alice ? "alice " : "bob ") << x << ' ' << a << '\n';
                write_matrix(out, (*side)[x][a]);
            }
}

QuantumStrategy read_strategy(std::istream& in) {
    std::string tag;
    QuantumStrategy s;
    std::size_t nq = 0, na = 0;
    if (!(in >> tag >> s.dim_alice >> s.dim_bob >> nq >> na) || tag != "strategy")
        throw InputError("bad strategy header");
    s.state = CVector(s.dim_alice * s.dim_bob);
    for (Eigen::Index i = 0; i < s.state.size(); ++i) {
        double re, im;
        if (!(in >> re >> im)) throw InputError("truncated state");
        s.state(i) = Complex(re, im);
    }
    s.alice.assign(nq, std::vector<CMatrix>(na));
    s.bob.assign(nq, std::vector<CMatrix>(na));
    for (std::size_t k = 0; k < 2 * nq * na; ++k) {
        std::string who;
        std::size_t x, a;
        if (!(in >> who >> x >> a) || (who != "alice" && who != "bob") || x >= nq || a >= na)
            throw InputError("bad projector header");
        const bool bob = who == "bob";
        (bob ? s.bob : s.alice)[x][a] = read_matrix(in, bob ? s.dim_bob : s.dim_alice);
    }
    return s;
}

}  // namespace matchgames
