#include "matchgames/lp.hpp"

#include "matchgames/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace matchgames {

LinearProgram::LinearProgram(std::size_t num_vars, Sense sense)
    : sense_(sense), objective_(num_vars), lower_(num_vars) {}

void LinearProgram::check_var(std::size_t var) const {
    if (var >= num_vars())
        throw InputError("LP variable index " + std::to_string(var) + " out of range");
}

void LinearProgram::set_objective(std::size_t var, Rational coeff) {
    check_var(var);
    coeff.canonicalize();
    objective_[var] = std::move(coeff);
}

void LinearProgram::set_lower_bound(std::size_t var, Rational bound) {
    check_var(var);
    bound.canonicalize();
    lower_[var] = std::move(bound);
}

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs) {
    std::map<std::size_t, Rational> merged;
    for (auto& t : terms) {
        check_var(t.var);
        t.coeff.canonicalize();
        merged[t.var] += t.coeff;
    }
    rhs.canonicalize();
    Constraint c{{}, relation, std::move(rhs)};
    for (auto& [var, coeff] : merged)
        if (coeff != 0) c.terms.push_back({var, coeff});
    constraints_.push_back(std::move(c));
}

Rational LinearProgram::evaluate(const std::vector<Rational>& point) const {
    Rational v = 0;
    for (std::size_t j = 0; j < num_vars(); ++j) v += objective_[j] * point.at(j);
    return v;
}

bool LinearProgram::is_feasible(const std::vector<Rational>& point) const {
    if (point.size() != num_vars()) return false;
    for (std::size_t j = 0; j < num_vars(); ++j)
        if (point[j] < lower_[j]) return false;
    for (const auto& c : constraints_) {
        Rational lhs = 0;
        for (const auto& t : c.terms) lhs += t.coeff * point[t.var];
        switch (c.relation) {
            case Relation::LessEqual:
                if (lhs > c.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != c.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < c.rhs) return false;
                break;
        }
    }
    return true;
}

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

// Dense simplex tableau. Column `width()` of each row holds the right-hand side.
// The cost row stores reduced costs c_j - z_j and, in its last entry, -z.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows, std::vector<mpq_class>(cols + 1)), cost_(cols + 1), basis_(rows), cols_(cols) {}

    std::size_t height() const { return rows_.size(); }
    std::size_t width() const { return cols_; }

    mpq_class& at(std::size_t r, std::size_t c) { return rows_[r][c]; }
    mpq_class& rhs(std::size_t r) { return rows_[r][cols_]; }
    mpq_class& cost(std::size_t c) { return cost_[c]; }
    mpq_class& cost_rhs() { return cost_[cols_]; }
    std::size_t& basis(std::size_t r) { return basis_[r]; }

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = rows_[pr];
        mpq_class inv = 1 / prow[pc];
        nz_.clear();
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (sgn(prow[j]) == 0) continue;
            prow[j] *= inv;
            nz_.push_back(j);
        }
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != pr) eliminate(rows_[i], prow, pc);
        eliminate(cost_, prow, pc);
        basis_[pr] = pc;
    }

    // Solves with Bland's rule over the columns marked allowed.
    // Returns false when unbounded.
    bool optimize(const std::vector<bool>& allowed, std::size_t& pivots) {
        for (;;) {
            std::size_t enter = cols_;
            if (bland_ || degenerate_run_ >= 50) {
                for (std::size_t j = 0; j < cols_; ++j)
                    if (allowed[j] && sgn(cost_[j]) > 0) {
                        enter = j;
                        break;
                    }
            } else {
                for (std::size_t j = 0; j < cols_; ++j)
                    if (allowed[j] && sgn(cost_[j]) > 0 && (enter == cols_ || cost_[j] > cost_[enter])) enter = j;
            }
            if (enter == cols_) return true;
            std::size_t leave = rows_.size();
            mpq_class best, ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (sgn(rows_[i][enter]) <= 0) continue;
                ratio = rows_[i][cols_] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows_.size()) return false;
            if (sgn(best) == 0) ++degenerate_run_; else degenerate_run_ = 0;
            pivot(leave, enter);
            ++pivots;
        }
    }

    void erase_rows(const std::vector<bool>& drop) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (drop[i]) continue;
            if (k != i) {
                rows_[k] = std::move(rows_[i]);
                basis_[k] = basis_[i];
            }
            ++k;
        }
        rows_.resize(k);
        basis_.resize(k);
    }

    // Keeps columns [0, keep) and the rhs column.
    void truncate_columns(std::size_t keep) {
        for (auto& row : rows_) {
            row[keep] = row[cols_];
            row.resize(keep + 1);
        }
        cost_.resize(keep + 1);
        cols_ = keep;
    }

private:
    void eliminate(std::vector<mpq_class>& row, const std::vector<mpq_class>& prow, std::size_t pc) {
        if (sgn(row[pc]) == 0) return;
        factor_ = row[pc];
        for (std::size_t j : nz_) {
            mpq_mul(scratch_.get_mpq_t(), factor_.get_mpq_t(), prow[j].get_mpq_t());
            mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), scratch_.get_mpq_t());
        }
    }

    std::vector<std::vector<mpq_class>> rows_;
    std::vector<mpq_class> cost_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    std::vector<std::size_t> nz_;
    mpq_class factor_, scratch_;
public:
    bool bland_ = false;
    std::size_t degenerate_run_ = 0;
};

struct StdRow {
    std::vector<Term> terms;  // over active structural columns
    Relation relation;
    Rational rhs;
};

}  // namespace

namespace {

// Double-precision twin of Tableau, used only to guess a good basis. The exact
// tableau is then moved onto that basis and finishes the solve on its own.
class FloatTableau {
public:
    FloatTableau(Tableau& exact, std::size_t art_begin)
        : rows_(exact.height(), std::vector<double>(exact.width() + 1)),
          cost_(exact.width() + 1, 0.0),
          basis_(exact.height()),
          cols_(exact.width()),
          art_begin_(art_begin) {
        for (std::size_t i = 0; i < exact.height(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(exact.at(i, j)) != 0) rows_[i][j] = exact.at(i, j).get_d();
            rows_[i][cols_] = exact.rhs(i).get_d();
            basis_[i] = exact.basis(i);
        }
    }

    const std::vector<std::size_t>& basis() const { return basis_; }

    // Loads reduced costs for the objective c (artificial columns cost `art_cost`).
    void load_cost(const std::vector<double>& c, double art_cost) {
        auto coeff = [&](std::size_t j) { return j >= art_begin_ ? art_cost : (j < c.size() ? c[j] : 0.0); };
        for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? coeff(j) : 0.0;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            double cb = coeff(basis_[k]);
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * rows_[k][j];
        }
    }

    double cost_rhs() const { return cost_[cols_]; }

    bool optimize(bool allow_artificials, std::size_t max_pivots) {
        std::size_t degenerate = 0;
        for (std::size_t it = 0; it < max_pivots; ++it) {
            const bool bland = degenerate >= 50;
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allow_artificials && j >= art_begin_) break;
                if (cost_[j] <= kTol) continue;
                if (enter == cols_ || (!bland && cost_[j] > cost_[enter])) enter = j;
                if (bland) break;
            }
            if (enter == cols_) return true;
            std::size_t leave = rows_.size();
            double best = 0;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                double a = rows_[i][enter];
                double ratio;
                if (!allow_artificials && basis_[i] >= art_begin_ && std::abs(a) > kTol)
                    ratio = 0;
                else if (a > kTol)
                    ratio = std::max(0.0, rows_[i][cols_]) / a;
                else
                    continue;
                if (leave == rows_.size() || ratio < best - kTol ||
                    (ratio <= best + kTol && std::abs(a) > std::abs(rows_[leave][enter]))) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows_.size()) return false;
            degenerate = best <= kTol ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
        return false;
    }

private:
    static constexpr double kTol = 1e-9;

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = rows_[pr];
        const double inv = 1.0 / prow[pc];
        nz_.clear();
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (prow[j] == 0) continue;
            prow[j] *= inv;
            if (std::abs(prow[j]) < 1e-14) prow[j] = 0; else nz_.push_back(j);
        }
        prow[pc] = 1;
        auto eliminate = [&](std::vector<double>& row) {
            const double f = row[pc];
            if (f == 0) return;
            for (std::size_t j : nz_) row[j] -= f * prow[j];
            row[pc] = 0;
        };
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != pr) eliminate(rows_[i]);
        eliminate(cost_);
        basis_[pr] = pc;
    }

    std::vector<std::vector<double>> rows_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    std::size_t art_begin_;
    std::vector<std::size_t> nz_;
};

// Pivots the exact tableau onto the basis suggested by the floating-point
// solve. Returns false if that basis is not primal feasible in exact arithmetic.
bool crash_to_basis(Tableau& tab, const std::vector<std::size_t>& target_basis, std::size_t art_begin,
                    std::size_t& pivots) {
    std::vector<bool> wanted(tab.width(), false);
    for (auto col : target_basis)
        if (col < art_begin) wanted[col] = true;
    std::vector<bool> placed(tab.width(), false);
    for (std::size_t k = 0; k < tab.height(); ++k)
        if (wanted[tab.basis(k)]) placed[tab.basis(k)] = true;
    for (std::size_t r0 = 0; r0 < target_basis.size(); ++r0) {
        const std::size_t col = target_basis[r0];
        if (col >= art_begin || placed[col]) continue;
        std::size_t row = tab.height();
        if (!wanted[tab.basis(r0)] && sgn(tab.at(r0, col)) != 0) row = r0;
        for (std::size_t k = 0; k < tab.height() && row == tab.height(); ++k)
            if (!wanted[tab.basis(k)] && sgn(tab.at(k, col)) != 0) row = k;
        if (row == tab.height()) continue;
        tab.pivot(row, col);
        ++pivots;
        placed[col] = true;
    }
    for (std::size_t k = 0; k < tab.height(); ++k)
        if (sgn(tab.rhs(k)) < 0) return false;
    return true;
}

constexpr std::size_t kCrashMinRows = 24;

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    const auto& lower = lp.lower_bounds();
    LpResult result;

    // Shift every variable to a zero lower bound.
    std::vector<StdRow> rows;
    rows.reserve(lp.constraints().size());
    for (const auto& c : lp.constraints()) {
        StdRow r{c.terms, c.relation, c.rhs};
        for (const auto& t : c.terms) r.rhs -= t.coeff * lower[t.var];
        rows.push_back(std::move(r));
    }

    // Presolve: singleton rows `a x = 0` fix x at its bound.
    std::vector<bool> fixed(n, false);
    std::vector<bool> row_dead(rows.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (row_dead[i]) continue;
            auto& r = rows[i];
            std::erase_if(r.terms, [&](const Term& t) { return fixed[t.var]; });
            if (r.terms.empty()) {
                bool ok = r.relation == Relation::Equal ? r.rhs == 0
                          : r.relation == Relation::LessEqual ? r.rhs >= 0
                                                              : r.rhs <= 0;
                if (!ok) return result;  // infeasible
                row_dead[i] = true;
                changed = true;
            } else if (r.terms.size() == 1 && r.relation == Relation::Equal && r.rhs == 0) {
                fixed[r.terms[0].var] = true;
                row_dead[i] = true;
                changed = true;
            }
        }
    }

    std::vector<std::size_t> column_of(n, n);
    std::vector<std::size_t> var_of;
    for (std::size_t j = 0; j < n; ++j)
        if (!fixed[j]) {
            column_of[j] = var_of.size();
            var_of.push_back(j);
        }
    const std::size_t structural = var_of.size();

    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!row_dead[i]) live.push_back(i);
    const std::size_t m = live.size();

    // Normalize to nonnegative rhs and count slack / artificial columns.
    std::size_t slacks = 0, artificials = 0;
    for (std::size_t i : live) {
        auto& r = rows[i];
        if (sgn(r.rhs) < 0) {
            r.rhs = -r.rhs;
            for (auto& t : r.terms) t.coeff = -t.coeff;
            if (r.relation == Relation::LessEqual)
                r.relation = Relation::GreaterEqual;
            else if (r.relation == Relation::GreaterEqual)
                r.relation = Relation::LessEqual;
        }
        if (r.relation != Relation::Equal) ++slacks;
        if (r.relation != Relation::LessEqual) ++artificials;
    }

    const std::size_t art_begin = structural + slacks;
    auto build = [&] {
        Tableau tab(m, art_begin + artificials);
        std::size_t next_slack = structural, next_art = art_begin;
        for (std::size_t k = 0; k < m; ++k) {
            const auto& r = rows[live[k]];
            for (const auto& t : r.terms) tab.at(k, column_of[t.var]) = t.coeff;
            tab.rhs(k) = r.rhs;
            if (r.relation == Relation::LessEqual) {
                tab.at(k, next_slack) = 1;
                tab.basis(k) = next_slack++;
            } else {
                if (r.relation == Relation::GreaterEqual) tab.at(k, next_slack++) = -1;
                tab.at(k, next_art) = 1;
                tab.basis(k) = next_art++;
            }
        }
        return tab;
    };
    Tableau tab = build();

    // Phase 2 objective in maximization form over structural columns.
    const Rational sign = lp.sense() == Sense::Maximize ? 1 : -1;
    std::vector<mpq_class> c(art_begin);
    for (std::size_t s = 0; s < structural; ++s) c[s] = sign * lp.objective()[var_of[s]];

    // Large programs: find a basis in floating point first, then verify and
    // finish exactly from it. Small ones go straight to the exact simplex.
    if (m >= kCrashMinRows) {
        FloatTableau ft(tab, art_begin);
        std::vector<double> cd(art_begin);
        for (std::size_t j = 0; j < art_begin; ++j) cd[j] = c[j].get_d();
        const std::size_t budget = 20 * (m + tab.width());
        bool ok = true;
        if (artificials > 0) {
            ft.load_cost({}, -1.0);
            ok = ft.optimize(true, budget);
        }
        if (ok && std::abs(ft.cost_rhs()) < 1e-7) {
            ft.load_cost(cd, 0.0);
            ft.optimize(false, budget);
        }
        if (!crash_to_basis(tab, ft.basis(), art_begin, result.pivots)) tab = build();
    }

    // Phase 1: maximize -(sum of artificials). Artificials that have left the
    // basis stay at zero.
    if (artificials > 0) {
        std::vector<bool> allowed(tab.width(), false);
        for (std::size_t j = 0; j < art_begin; ++j) allowed[j] = true;
        for (std::size_t j = 0; j <= tab.width(); ++j) (j < tab.width() ? tab.cost(j) : tab.cost_rhs()) = 0;
        for (std::size_t j = art_begin; j < tab.width(); ++j) tab.cost(j) = -1;
        for (std::size_t k = 0; k < m; ++k) {
            if (tab.basis(k) < art_begin) continue;
            for (std::size_t j = 0; j < tab.width(); ++j)
                if (sgn(tab.at(k, j)) != 0) tab.cost(j) += tab.at(k, j);
            tab.cost_rhs() += tab.rhs(k);
        }
        tab.optimize(allowed, result.pivots);
        if (sgn(tab.cost_rhs()) != 0) return result;  // infeasible

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        std::vector<bool> drop(m, false);
        bool any_drop = false;
        for (std::size_t k = 0; k < m; ++k) {
            if (tab.basis(k) < art_begin) continue;
            std::size_t col = art_begin;
            for (std::size_t j = 0; j < art_begin; ++j)
                if (sgn(tab.at(k, j)) != 0) {
                    col = j;
                    break;
                }
            if (col == art_begin) {
                drop[k] = true;
                any_drop = true;
            } else {
                tab.pivot(k, col);
                ++result.pivots;
            }
        }
        if (any_drop) tab.erase_rows(drop);
        tab.truncate_columns(art_begin);
    }

    // Phase 2.
    for (std::size_t j = 0; j < tab.width(); ++j) tab.cost(j) = c[j];
    tab.cost_rhs() = 0;
    for (std::size_t k = 0; k < tab.height(); ++k) {
        const mpq_class& cb = c[tab.basis(k)];
        if (sgn(cb) == 0) continue;
        for (std::size_t j = 0; j < tab.width(); ++j)
            if (sgn(tab.at(k, j)) != 0) tab.cost(j) -= cb * tab.at(k, j);
        tab.cost_rhs() -= cb * tab.rhs(k);
    }
    std::vector<bool> allowed(tab.width(), true);
    if (!tab.optimize(allowed, result.pivots)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.point = lower;
    for (std::size_t k = 0; k < tab.height(); ++k) {
        std::size_t col = tab.basis(k);
        if (col < structural) result.point[var_of[col]] += tab.rhs(k);
    }
    result.value = lp.evaluate(result.point);
    return result;
}

DualProgram dual_of(const LinearProgram& lp) {
    // Primal variables are shifted to x = x' + lb with x' >= 0.
    const bool maximize = lp.sense() == Sense::Maximize;
    const auto& cons = lp.constraints();
    const auto& lower = lp.lower_bounds();

    // Each primal row gets one dual column (sign-restricted) or two (free).
    // For a max primal: <= rows give y >= 0, >= rows give y <= 0.
    // For a min primal: the signs flip.
    struct DualVar {
        std::size_t row;
        int sign;
    };
    std::vector<DualVar> vars;
    for (std::size_t i = 0; i < cons.size(); ++i) {
        Relation rel = cons[i].relation;
        if (rel == Relation::Equal) {
            vars.push_back({i, 1});
            vars.push_back({i, -1});
        } else {
            bool nonneg = (rel == Relation::LessEqual) == maximize;
            vars.push_back({i, nonneg ? 1 : -1});
        }
    }

    DualProgram dual{LinearProgram(vars.size(), maximize ? Sense::Minimize : Sense::Maximize), 0};
    for (std::size_t j = 0; j < lp.num_vars(); ++j) dual.offset += lp.objective()[j] * lower[j];

    std::vector<std::vector<Term>> columns(lp.num_vars());
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const auto& c = cons[vars[k].row];
        Rational shifted = c.rhs;
        for (const auto& t : c.terms) shifted -= t.coeff * lower[t.var];
        dual.program.set_objective(k, vars[k].sign * shifted);
        for (const auto& t : c.terms) columns[t.var].push_back({k, vars[k].sign * t.coeff});
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        dual.program.add_constraint(std::move(columns[j]),
                                    maximize ? Relation::GreaterEqual : Relation::LessEqual,
                                    lp.objective()[j]);
    return dual;
}

void write_lp(std::ostream& out, const LinearProgram& lp) {
    out << "lp " << lp.num_vars() << ' ' << (lp.sense() == Sense::Maximize ? "max" : "min") << '\n';
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (lp.objective()[j] != 0) out << "obj " << j << ' ' << to_fraction_string(lp.objective()[j]) << '\n';
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (lp.lower_bounds()[j] != 0) out << "lb " << j << ' ' << to_fraction_string(lp.lower_bounds()[j]) << '\n';
    for (const auto& c : lp.constraints()) {
        const char* rel = c.relation == Relation::LessEqual ? "<=" : c.relation == Relation::Equal ? "=" : ">=";
        out << "row " << rel << ' ' << to_fraction_string(c.rhs);
        for (const auto& t : c.terms) out << ' ' << t.var << ':' << to_fraction_string(t.coeff);
        out << '\n';
    }
}

LinearProgram read_lp(std::istream& in) {
    std::string line, tag;
    std::size_t n = 0;
    std::string sense;
    if (!std::getline(in, line)) throw InputError("empty LP input");
    {
        std::istringstream head(line);
        if (!(head >> tag >> n >> sense) || tag != "lp" || (sense != "max" && sense != "min"))
            throw InputError("bad LP header: " + line);
    }
    LinearProgram lp(n, sense == "max" ? Sense::Maximize : Sense::Minimize);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        if (!(ls >> tag)) continue;
        if (tag == "obj" || tag == "lb") {
            std::size_t var;
            std::string q;
            if (!(ls >> var >> q)) throw InputError("bad LP line: " + line);
            if (tag == "obj")
                lp.set_objective(var, parse_rational(q));
            else
                lp.set_lower_bound(var, parse_rational(q));
        } else if (tag == "row") {
            std::string rel, rhs, tok;
            if (!(ls >> rel >> rhs)) throw InputError("bad LP row: " + line);
            Relation r;
            if (rel == "<=")
                r = Relation::LessEqual;
            else if (rel == "=")
                r = Relation::Equal;
            else if (rel == ">=")
                r = Relation::GreaterEqual;
            else
                throw InputError("bad relation: " + rel);
            std::vector<Term> terms;
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) throw InputError("bad LP term: " + tok);
                terms.push_back({std::stoul(tok.substr(0, colon)), parse_rational(tok.substr(colon + 1))});
            }
            lp.add_constraint(std::move(terms), r, parse_rational(rhs));
        } else {
            throw InputError("unknown LP line: " + line);
        }
    }
    return lp;
}

}  // namespace matchgames
