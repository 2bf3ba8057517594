#pragma once

#include "matchgames/game.hpp"
#include "matchgames/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace matchgames {

/// Exact conditional distribution p(a, b | x, y), laid out with the same flat
/// index as the game table.
class Correlation {
public:
    Correlation(std::size_t num_questions, std::size_t num_answers);

    std::size_t num_questions() const { return nq_; }
    std::size_t num_answers() const { return na_; }

    std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
        return ((x * nq_ + y) * na_ + a) * na_ + b;
    }
    Rational& operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
        return table_[index(x, y, a, b)];
    }
    const Rational& operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
        return table_[index(x, y, a, b)];
    }
    const std::vector<Rational>& table() const { return table_; }
    std::vector<Rational>& table() { return table_; }

    // Sum over b of p(a, b | x, y).
    Rational alice_marginal(std::size_t x, std::size_t y, std::size_t a) const;
    // Sum over a of p(a, b | x, y).
    Rational bob_marginal(std::size_t x, std::size_t y, std::size_t b) const;

    bool operator==(const Correlation&) const = default;

private:
    std::size_t nq_, na_;
    std::vector<Rational> table_;
};

struct DeterministicStrategy {
    std::vector<std::size_t> alice;  // f_A(x)
    std::vector<std::size_t> bob;    // f_B(y)
};

// Nonnegative entries and each (x, y) block summing to one.
bool is_valid(const Correlation& p);
bool is_nonsignaling(const Correlation& p);
bool is_synchronous_corr(const Correlation& p);
bool is_bisynchronous_corr(const Correlation& p);

Rational winning_probability(const Game& game, const Correlation& p);

Correlation deterministic_correlation(const DeterministicStrategy& s, std::size_t num_answers);

struct ClassicalLimits {
    // Cap on the number of Alice assignments enumerated after pruning.
    double max_assignments = 5e7;
};

struct ClassicalResult {
    Rational value;
    DeterministicStrategy best;
};

/// Exact classical value by enumerating Alice's pruned assignments; for each one
/// Bob's best response is computed question by question. With `synchronous`
/// both players use the same map.
ClassicalResult classical_value(const Game& game, bool synchronous = false, const ClassicalLimits& limits = {});

// File format: `corr <|X|> <|A|>` then `x y a b num/den` per nonzero entry.
void write_correlation(std::ostream& out, const Correlation& p);
Correlation read_correlation(std::istream& in);

}  // namespace matchgames
