#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lumen/error.hpp"

namespace lumen {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

/// maximize c.x  subject to  A x = b,  x >= 0.
struct StandardFormLp {
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> c;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;  // phase-1 residual accepted as feasible
    double pivot_tol = 1e-12;       // smaller tableau entries are treated as zero
    std::size_t max_pivots = 0;     // 0 selects 50 * number of variables
};

struct SimplexResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t pivots = 0;
    double phase1_residual = 0.0;
};

namespace detail {

/// Dense tableau for the two-phase method. Columns [0, n) are the problem
/// variables, [n, n + m) the phase-1 artificials, and the last column is
/// the right-hand side.
class Tableau {
public:
    Tableau(std::vector<std::vector<double>> rows, std::size_t n, const SimplexOptions& opt)
        : t_(std::move(rows)), n_(n), m_(t_.size()), opt_(opt) {
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
        limit_ = opt_.max_pivots ? opt_.max_pivots : 50 * n_;
    }

    std::size_t rows() const { return t_.size(); }
    std::size_t rhs_col() const { return n_ + m_; }
    std::size_t pivots() const { return pivots_; }
    double rhs(std::size_t i) const { return t_[i][rhs_col()]; }
    std::size_t basic(std::size_t i) const { return basis_[i]; }
    bool is_artificial(std::size_t j) const { return j >= n_ && j < rhs_col(); }

    /// Runs the simplex loop for the cost vector `cost` (length n + m).
    /// Returns false if the objective is unbounded above.
    bool optimize(const std::vector<double>& cost, bool allow_artificial_entry) {
        const std::size_t cols = rhs_col();
        double cost_scale = 1.0;
        for (double c : cost) cost_scale = std::max(cost_scale, std::abs(c));
        const double profit_tol = 10.0 * opt_.pivot_tol * cost_scale;
        std::vector<double> profit(cols);
        for (;;) {
            for (std::size_t j = 0; j < cols; ++j) {
                double r = cost[j];
                for (std::size_t i = 0; i < rows(); ++i) r -= cost[basis_[i]] * t_[i][j];
                profit[j] = r;
            }
            // Bland: lowest-index improving column.
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!allow_artificial_entry && is_artificial(j)) continue;
                if (profit[j] > profit_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;

            // Ratio test; ties go to the lowest basic index (Bland).
            std::size_t leave = rows();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows(); ++i) {
                const double a = t_[i][enter];
                if (a <= opt_.pivot_tol) continue;
                const double ratio = t_[i][cols] / a;
                if (ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && leave < rows() && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows()) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        if (++pivots_ > limit_) {
            throw ConvergenceError("simplex: pivot limit " + std::to_string(limit_) +
                                   " reached (numerical cycling)");
        }
        const std::size_t cols = rhs_col() + 1;
        auto& pr = t_[r];
        const double inv = 1.0 / pr[s];
        for (std::size_t j = 0; j < cols; ++j) pr[j] *= inv;
        pr[s] = 1.0;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = t_[i][s];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t_[i][j] -= f * pr[j];
            t_[i][s] = 0.0;
            double& rhs = t_[i][cols - 1];
            if (rhs < 0.0 && rhs > -1e-13) rhs = 0.0;
        }
        basis_[r] = s;
    }

    /// Pivots basic artificials out on any usable problem column; rows where
    /// none exists are linearly dependent and are dropped.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows();) {
            if (!is_artificial(basis_[i])) {
                ++i;
                continue;
            }
            std::size_t col = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(t_[i][j]) > opt_.pivot_tol) {
                    col = j;
                    break;
                }
            }
            if (col < n_) {
                pivot(i, col);
                ++i;
            } else {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

private:
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
    std::size_t n_;
    std::size_t m_;  // rows at construction; fixes the artificial block width
    SimplexOptions opt_;
    std::size_t pivots_ = 0;
    std::size_t limit_ = 0;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's anti-cycling rule.
///
/// Each equality row is scaled to unit max-norm before pivoting. Phase 1
/// minimises the sum of artificials; a residual below `feasibility_tol`
/// is accepted as feasible. Throws ConvergenceError when the pivot limit
/// is reached.
inline SimplexResult solve_simplex(const StandardFormLp& lp, const SimplexOptions& opt = {}) {
    const std::size_t n = lp.c.size();
    if (lp.A.size() != lp.b.size()) throw DomainError("simplex: A and b row counts differ");
    for (const auto& row : lp.A) {
        if (row.size() != n) throw DomainError("simplex: every row of A needs one entry per variable");
    }

    SimplexResult result;
    result.x.assign(n, 0.0);

    // Equilibrate, drop empty rows, make the right-hand side nonnegative.
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < lp.A.size(); ++i) {
        double scale = 0.0;
        for (double a : lp.A[i]) scale = std::max(scale, std::abs(a));
        if (scale == 0.0) {
            if (std::abs(lp.b[i]) > opt.feasibility_tol) {
                result.phase1_residual = std::abs(lp.b[i]);
                return result;
            }
            continue;
        }
        std::vector<double> r(lp.A[i].begin(), lp.A[i].end());
        double rhs = lp.b[i] / scale;
        for (double& a : r) a /= scale;
        if (rhs < 0.0) {
            rhs = -rhs;
            for (double& a : r) a = -a;
        }
        r.push_back(rhs);
        rows.push_back(std::move(r));
    }
    const std::size_t m = rows.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double rhs = rows[i].back();
        rows[i].back() = 0.0;
        rows[i].resize(n + m + 1, 0.0);
        rows[i][n + i] = 1.0;
        rows[i][n + m] = rhs;
    }

    detail::Tableau tab(std::move(rows), n, opt);

    std::vector<double> phase1(n + m, 0.0);
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = -1.0;
    tab.optimize(phase1, true);
    double residual = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.is_artificial(tab.basic(i))) residual += tab.rhs(i);
    }
    result.phase1_residual = residual;
    if (residual >= opt.feasibility_tol) {
        result.pivots = tab.pivots();
        return result;
    }

    tab.expel_artificials();
    std::vector<double> phase2(n + m, 0.0);
    std::copy(lp.c.begin(), lp.c.end(), phase2.begin());
    const bool bounded = tab.optimize(phase2, false);
    result.pivots = tab.pivots();
    if (!bounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    for (std::size_t i = 0; i < tab.rows(); ++i) {
        const std::size_t j = tab.basic(i);
        if (j < n) result.x[j] = std::max(0.0, tab.rhs(i));
    }
    result.status = LpStatus::Optimal;
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) result.objective += lp.c[j] * result.x[j];
    return result;
}

}  // namespace lumen
