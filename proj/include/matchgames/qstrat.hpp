#pragma once

#include "matchgames/game.hpp"
#include "matchgames/ncalg.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace matchgames {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tensor-product strategy: a unit vector in C^{dA} (x) C^{dB} (Alice's index
/// most significant) and one projective measurement per question and player,
/// with one projector per answer.
struct QuantumStrategy {
    std::size_t dim_alice = 1, dim_bob = 1;
    CVector state;
    std::vector<std::vector<CMatrix>> alice;  // alice[x][a]
    std::vector<std::vector<CMatrix>> bob;    // bob[y][b]
};

/// Hermitian involution, M^2 = I.
struct Observable {
    CMatrix matrix;
};

struct StrategyTolerances {
    double projector = 1e-9;
    double completeness = 1e-9;
    double state_norm = 1e-12;
};

/// Throws InputError describing the first violated shape or operator identity.
void validate_strategy(const QuantumStrategy& s, std::size_t num_questions, std::size_t num_answers,
                       const StrategyTolerances& tol = {});

struct QuantumEvaluation {
    double value = 0;
    double imaginary_residue = 0;  // |Im| of the weighted sum; physical strategies give ~0
};

QuantumEvaluation evaluate_strategy(const Game& game, const QuantumStrategy& s);

/// (1/|X|^2) sum V(x,y,a,b) <psi| A_xa (x) B_yb |psi>, real part.
double quantum_win_prob(const Game& game, const QuantumStrategy& s);

/// Floating-point table p(a, b | x, y) with the same flat layout as Correlation.
struct FloatCorrelation {
    std::size_t num_questions = 0, num_answers = 0;
    std::vector<double> table;
    double nonsignaling_residual = 0;   // largest marginal discrepancy
    double normalization_residual = 0;  // largest |sum_{a,b} p - 1|
    double operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
        return table[((x * num_questions + y) * num_answers + a) * num_answers + b];
    }
};

FloatCorrelation correlation_of(const QuantumStrategy& s, std::size_t num_questions, std::size_t num_answers);

/// n traceless real 2x2 involutions summing to zero: cos(2 pi v/n) X + sin(2 pi v/n) Z,
/// or {X, -X} for n = 2.
std::vector<Observable> sum_zero_observables(std::size_t n);

/// Maximally entangled two-qubit strategy for the K_{n,2} matching game where
/// question v answers edge (v, 0) on the +1 eigenspace of A_v and (v, 1) on
/// the -1 eigenspace; Bob uses the complex conjugates.
QuantumStrategy kn2_synchronous_strategy(const std::vector<Observable>& observables);

/// kn2_synchronous_strategy(sum_zero_observables(3)); wins 5/6 on K_{3,2}.
QuantumStrategy k32_optimal_strategy();

/// One-dimensional strategy for K_{n,2}: Alice always answers (v, 0), Bob (v, 1).
QuantumStrategy trivial_strategy(std::size_t n);

/// Observable A_v = A_{v,0} - A_{v,1} of a K_{n,2} strategy (Alice or Bob).
std::vector<CMatrix> kn2_observables(const QuantumStrategy& s, bool bob_side);

/// Random Hermitian involution of dimension d with a random +1 eigenspace.
CMatrix random_involution(std::size_t d, std::uint64_t seed);

/// Evaluates a polynomial on concrete observables: a_i -> A_i (x) I, b_j -> I (x) B_j.
CMatrix instantiate(const NCPolynomial& p, const std::vector<CMatrix>& alice, const std::vector<CMatrix>& bob);

struct SeesawOptions {
    std::size_t dim_alice = 2, dim_bob = 2;
    std::size_t restarts = 200;
    std::size_t iterations = 200;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  // 0 picks hardware concurrency
};

struct SeesawResult {
    double best_value = 0;
    QuantumStrategy best;
    std::vector<double> values;         // per restart
    std::vector<std::uint64_t> seeds;   // per restart
};

/// Random-restart alternating optimisation for games in which every question
/// has at most two answers that can ever win. Each step is an exact best
/// response: Alice's projectors from the sign of M_{x,0} - M_{x,1}, then Bob's,
/// then the state as a top eigenvector. Values never decrease within a restart.
/// Restart i uses seed options.seed + i. Heuristic: no optimality guarantee.
SeesawResult seesaw_sweep(const Game& game, const SeesawOptions& options = {});

/// Plain-text dump: `strategy <dA> <dB> <|X|> <|A|>`, the state as `re im`
/// lines, then each projector as `alice|bob x a` followed by its rows of
/// `re im` pairs.
void write_strategy(std::ostream& out, const QuantumStrategy& s);
QuantumStrategy read_strategy(std::istream& in);

}  // namespace matchgames
