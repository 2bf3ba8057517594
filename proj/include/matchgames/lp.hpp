#pragma once

#include "matchgames/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace matchgames {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };

struct Term {
    std::size_t var;
    Rational coeff;
};

struct Constraint {
    std::vector<Term> terms;  // sorted by var, no duplicates, no zero coefficients
    Relation relation;
    Rational rhs;
};

// A linear program over rational data. Every variable has a finite lower
// bound (default 0) and no upper bound; upper bounds are ordinary rows.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_vars, Sense sense = Sense::Maximize);

    std::size_t num_vars() const { return objective_.size(); }
    Sense sense() const { return sense_; }

    void set_objective(std::size_t var, Rational coeff);
    const std::vector<Rational>& objective() const { return objective_; }

    // Duplicate variable indices are summed; zero coefficients are dropped.
    void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs);
    const std::vector<Constraint>& constraints() const { return constraints_; }

    void set_lower_bound(std::size_t var, Rational bound);
    const std::vector<Rational>& lower_bounds() const { return lower_; }

    Rational evaluate(const std::vector<Rational>& point) const;
    bool is_feasible(const std::vector<Rational>& point) const;

private:
    void check_var(std::size_t var) const;

    Sense sense_;
    std::vector<Rational> objective_;
    std::vector<Rational> lower_;
    std::vector<Constraint> constraints_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;              // meaningful only when Optimal
    std::vector<Rational> point;  // meaningful only when Optimal
    std::size_t pivots = 0;
};

/// Two-phase primal simplex over exact rationals. Dantzig pricing falls back to
/// Bland's rule after a run of degenerate pivots. Larger programs first pivot to
/// a basis found in floating point, then finish exactly.
/// The optimal point, when returned, satisfies every constraint exactly.
LpResult solve_lp(const LinearProgram& lp);

/// Dual program plus the constant that must be added to its objective so that
/// strong duality reads `primal optimum == dual optimum + offset`.
struct DualProgram {
    LinearProgram program;
    Rational offset;
};

DualProgram dual_of(const LinearProgram& lp);

/// Plain-text serialization, rationals as `num/den`.
void write_lp(std::ostream& out, const LinearProgram& lp);
LinearProgram read_lp(std::istream& in);

const char* to_string(LpStatus status);

}  // namespace matchgames
