#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prodiff/rational.hpp"

namespace prodiff {

/// Entering-column rule. dantzig takes the most negative reduced cost and
/// falls back to bland after a run of degenerate pivots, so both terminate.
enum class PivotRule { bland, dantzig };

PivotRule parse_pivot_rule(const std::string& name);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;
    Rational objective;
    std::size_t pivots = 0;
};

/// Exact linear program: minimize c.x subject to A x = b, x >= 0.
///
/// Two-phase tableau simplex over the rationals with Bland's rule, so it
/// terminates on degenerate problems. Redundant equality rows are dropped
/// after phase one. `a` is row-major with a.size() rows of c.size() entries.
LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c, PivotRule rule = PivotRule::bland);

}  // namespace prodiff
