#pragma once

#include "matchgames/correlation.hpp"
#include "matchgames/game.hpp"
#include "matchgames/lp.hpp"

#include <optional>

namespace matchgames {

struct NsLimits {
    // Cap on |X|^2 |A|^2, the number of LP variables of the full program.
    std::size_t max_variables = 40000;

    // Reads MATCHGAMES_MAX_LP_VARS when set.
    static NsLimits from_environment();
};

struct NsResult {
    Rational value;
    Correlation witness;
};

/// Builds the nonsignaling LP of a game. Variable (x*|X|+y)*|A|^2 + a*|A| + b
/// is p(a, b | x, y). Marginal rows compare every x (resp. y) against x = 0
/// (resp. y = 0). With `synchronous`, p(a, b | x, x) = 0 for a != b.
LinearProgram ns_program(const Game& game, bool synchronous = false);

/// Exact nonsignaling value with an optimal correlation.
NsResult ns_value(const Game& game, bool synchronous = false, const NsLimits& limits = {});

/// Decides whether a perfect nonsignaling correlation exists, returning one.
/// For symmetric synchronous games the LP is reduced to shared marginals plus
/// one transport block per unordered question pair; otherwise the full program
/// restricted to winning entries is solved. The witness is checked before return.
std::optional<Correlation> ns_perfect(const Game& game);

}  // namespace matchgames
