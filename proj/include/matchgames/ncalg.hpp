#pragma once

#include "matchgames/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace matchgames {

/// Generator of the two-party algebra: Alice's a_i or Bob's b_i (0-based index).
/// Every generator is a self-adjoint involution and a's commute with b's.
struct Generator {
    bool bob = false;
    std::uint16_t index = 0;
    auto operator<=>(const Generator&) const = default;
};

/// Word in normal form: Alice letters first, then Bob letters, no letter
/// adjacent to itself.
using NCWord = std::vector<Generator>;

// Orders words by length, then lexicographically.
struct WordLess {
    bool operator()(const NCWord& x, const NCWord& y) const {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
};

/// Rewrites an arbitrary product to normal form.
NCWord normalize(const NCWord& word);

/// Polynomial with rational coefficients over the generators a_0..a_{n-1},
/// b_0..b_{n-1}. Zero coefficients are never stored.
class NCPolynomial {
public:
    explicit NCPolynomial(std::size_t arity = 0) : arity_(arity) {}

    static NCPolynomial constant(std::size_t arity, const Rational& c);
    static NCPolynomial alice(std::size_t arity, std::size_t i);
    static NCPolynomial bob(std::size_t arity, std::size_t j);

    std::size_t arity() const { return arity_; }
    const std::map<NCWord, Rational, WordLess>& terms() const { return terms_; }
    Rational coefficient(const NCWord& word) const;
    bool is_zero() const { return terms_.empty(); }

    // Adds c times `word` (normalized first).
    void add_term(const NCWord& word, const Rational& c);

    bool operator==(const NCPolynomial&) const = default;

private:
    std::size_t arity_;
    std::map<NCWord, Rational, WordLess> terms_;
};

NCPolynomial nc_add(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial nc_scale(const NCPolynomial& p, const Rational& c);
NCPolynomial nc_multiply(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial adjoint(const NCPolynomial& p);

NCPolynomial operator+(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial operator-(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial operator-(const NCPolynomial& p);
NCPolynomial operator*(const NCPolynomial& p, const NCPolynomial& q);
NCPolynomial operator*(const Rational& c, const NCPolynomial& p);

struct SosTerm {
    Rational coeff;
    NCPolynomial square_root;  // s in coeff * s^2
};

/// lhs - sum coeff * s^2, normalized.
NCPolynomial sos_residual(const NCPolynomial& lhs, const std::vector<SosTerm>& terms);

/// True iff lhs equals sum coeff * s^2 exactly. Throws InputError for a
/// non-self-adjoint s, a nonpositive coefficient, or mismatched arity.
bool verify_sos(const NCPolynomial& lhs, const std::vector<SosTerm>& terms);

struct SosIdentity {
    NCPolynomial lhs;
    std::vector<SosTerm> terms;
};

/// n^2 - sum_{v1} a_{v1} * sum_{v2} (-1)^[v1 = v2] b_{v2}. Twice n^2 times the
/// winning probability of a strategy for the K_{n,2} matching game, written in
/// the observables a_v = A_{v,0} - A_{v,1}.
NCPolynomial kn2_bias_polynomial(std::size_t n);

/// Winning probability polynomial, bias / (2 n^2).
NCPolynomial kn2_win_polynomial(std::size_t n);

/// Synchronous winning probability (b_v replaced by a_v):
/// (1/(2n^2)) (sum_v a_v^2 - sum_{v != w} a_v a_w) + 1/2.
NCPolynomial kn2_sync_win_polynomial(std::size_t n);

/// (1/2 + 1/n) - sync win = (1/(2n^2)) (sum_v a_v)^2.
SosIdentity sync_sos_identity(std::size_t n);

/// The published K_{3,2} decomposition of
/// 6 - (a1(b1 - b2 - b3) + a2(-b1 + b2 - b3) + a3(-b1 - b2 + b3)) with squares
/// weighted 1/2, 1/2, 1/4, 1/12.
SosIdentity k32_published_sos();

/// A valid decomposition of the same left-hand side:
/// 1/3 of the three squares (a_i - a_j - b_i + b_j)^2 plus
/// 1/4 (sum a + sum b)^2 plus 1/12 (sum a - sum b)^2.
SosIdentity k32_corrected_sos();

struct Kn2Values {
    Rational classical;
    Rational quantum;
    Rational quantum_synchronous;
};

/// Closed-form values of the K_{n,2} matching game.
Kn2Values kn2_value_table(std::size_t n);

/// Text format, one term per line: `coeff * a1 a3 b2` (1-based labels), a
/// constant written as `coeff * 1`. The first line is `ncpoly <n>`.
void write_polynomial(std::ostream& out, const NCPolynomial& p);
NCPolynomial read_polynomial(std::istream& in);
std::string word_to_string(const NCWord& word);

}  // namespace matchgames
