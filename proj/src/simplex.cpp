#include "prodiff/simplex.hpp"

#include <optional>

namespace prodiff {

namespace {

class Tableau {
public:
    Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b, std::size_t n_vars)
        : n_vars_(n_vars), width_(n_vars + a.size() + 1)
    {
        const std::size_t m = a.size();
        rows_.assign(m, std::vector<Rational>(width_));
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const bool flip = b[i] < 0;
            for (std::size_t j = 0; j < n_vars; ++j) rows_[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
            rows_[i][n_vars + i] = 1;
            rows_[i][width_ - 1] = flip ? Rational(-b[i]) : b[i];
            basis_[i] = n_vars + i;
        }
        cost_.assign(width_, Rational(0));
    }

    std::size_t rhs() const { return width_ - 1; }
    bool is_artificial(std::size_t col) const { return col >= n_vars_ && col < width_ - 1; }

    // Reduced-cost row for the given column costs (rhs entry holds -objective).
    void set_objective(const std::vector<Rational>& col_cost)
    {
        cost_.assign(width_, Rational(0));
        for (std::size_t j = 0; j < width_ - 1; ++j) cost_[j] = col_cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational cb = col_cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < width_; ++j) {
                if (rows_[i][j] != 0) cost_[j] -= cb * rows_[i][j];
            }
        }
    }

    Rational objective() const { return -cost_[width_ - 1]; }

    void pivot(std::size_t row, std::size_t col)
    {
        auto& pr = rows_[row];
        const Rational inv = 1 / pr[col];
        for (auto& v : pr) {
            if (v != 0) v *= inv;
        }
        auto eliminate = [&](std::vector<Rational>& target) {
            const Rational f = target[col];
            if (f == 0) return;
            for (std::size_t j = 0; j < width_; ++j) {
                if (pr[j] != 0) target[j] -= f * pr[j];
            }
        };
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != row) eliminate(rows_[i]);
        }
        eliminate(cost_);
        basis_[row] = col;
        ++pivots_;
    }

    // Pivots until optimal; returns false when unbounded.
    bool optimize(bool allow_artificial, PivotRule rule)
    {
        constexpr std::size_t kDegenerateLimit = 50;
        std::size_t degenerate_run = 0;
        for (;;) {
            const bool use_bland = rule == PivotRule::bland || degenerate_run >= kDegenerateLimit;
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < width_ - 1; ++j) {
                if (!allow_artificial && is_artificial(j)) continue;
                if (cost_[j] >= 0) continue;
                if (!enter || cost_[j] < cost_[*enter]) enter = j;
                if (use_bland) break;
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& coef = rows_[i][*enter];
                if (coef <= 0) continue;
                const Rational ratio = rows_[i][width_ - 1] / coef;
                if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return false;
            degenerate_run = best_ratio == 0 ? degenerate_run + 1 : 0;
            pivot(*leave, *enter);
        }
    }

    // Pivots basic artificials out where possible and drops redundant rows.
    void purge_artificials()
    {
        for (std::size_t i = 0; i < rows_.size();) {
            if (!is_artificial(basis_[i])) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n_vars_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<Rational> solution() const
    {
        std::vector<Rational> x(n_vars_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < n_vars_) x[basis_[i]] = rows_[i][width_ - 1];
        }
        return x;
    }

    std::size_t pivots() const { return pivots_; }

private:
    std::size_t n_vars_;
    std::size_t width_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
    std::size_t pivots_ = 0;
};

}  // namespace

PivotRule parse_pivot_rule(const std::string& name)
{
    if (name == "bland") return PivotRule::bland;
    if (name == "dantzig") return PivotRule::dantzig;
    throw ParseError("unknown pivot rule '" + name + "' (expected bland or dantzig)");
}

LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c, PivotRule rule)
{
    const std::size_t n = c.size();
    if (a.size() != b.size()) throw PreconditionError("LP: row count of A does not match b");
    for (const auto& row : a) {
        if (row.size() != n) throw PreconditionError("LP: row length of A does not match c");
    }

    Tableau tab(a, b, n);
    const std::size_t m = a.size();

    std::vector<Rational> phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    tab.set_objective(phase1);
    tab.optimize(true, rule);

    LpResult result;
    if (tab.objective() != 0) {
        result.status = LpStatus::infeasible;
        result.pivots = tab.pivots();
        return result;
    }
    tab.purge_artificials();

    std::vector<Rational> phase2(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    tab.set_objective(phase2);
    if (!tab.optimize(false, rule)) {
        result.status = LpStatus::unbounded;
        result.pivots = tab.pivots();
        return result;
    }
    result.status = LpStatus::optimal;
    result.x = tab.solution();
    result.objective = tab.objective();
    result.pivots = tab.pivots();
    return result;
}

}  // namespace prodiff
