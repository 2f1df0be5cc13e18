// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/rational.hpp"

#include <cstddef>
#include <vector>

namespace zstab {

// Exact two-phase primal simplex for max c.x s.t. Ax = b, x >= 0, with
// Bland's rule (no cycling). Desk scale: a few dozen rows and columns.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat objective = 0;
    RatVec x;
};

class SimplexSolver {
  public:
    LpResult solve(RatMat a, RatVec b, RatVec c) {
        const std::size_t m = a.size();
        n_ = m == 0 ? c.size() : a[0].size();
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] < 0) {
                for (auto& v : a[i]) v = -v;
                b[i] = -b[i];
            }
        }
        // tableau: m constraint rows, one objective row; columns: n real vars,
        // m artificials, rhs
        rows_ = m;
        cols_ = n_ + m;
        tab_.assign(m + 1, RatVec(cols_ + 1, Rat(0)));
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a[i][j];
            tab_[i][n_ + i] = 1;
            tab_[i][cols_] = b[i];
            basis_[i] = n_ + i;
        }
        // phase 1: maximize -sum(artificials); reduced-cost row for that
        // objective with the artificial basis
        for (std::size_t j = 0; j < n_; ++j) {
            Rat s = 0;
            for (std::size_t i = 0; i < m; ++i) s += a[i][j];
            tab_[m][j] = s;
        }
        // rhs slot of the objective row holds the negated objective value;
        // the initial phase-1 value is -sum(b)
        Rat sum = 0;
        for (std::size_t i = 0; i < m; ++i) sum += b[i];
        tab_[m][cols_] = sum;
        run();
        LpResult res;
        if (tab_[m][cols_] != 0) {
            res.status = LpResult::Status::Infeasible;
            return res;
        }
        // drive artificials out of the basis; drop redundant rows
        for (std::size_t i = 0; i < rows_;) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            std::size_t j = 0;
            while (j < n_ && tab_[i][j] == 0) ++j;
            if (j < n_) {
                pivot(i, j);
                ++i;
            } else {
                tab_.erase(tab_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
                --rows_;
            }
        }
        // phase 2: real objective over the real columns only
        cols_ = n_;
        for (auto& row : tab_) row.erase(row.begin() + static_cast<long>(n_), row.end() - 1);
        auto& obj = tab_[rows_];
        for (std::size_t j = 0; j <= cols_; ++j) obj[j] = 0;
        for (std::size_t j = 0; j < n_; ++j) obj[j] = c[j];
        Rat value = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            Rat cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) obj[j] -= cb * tab_[i][j];
            value += cb * tab_[i][cols_];
        }
        obj[cols_] = -value;
        if (!run()) {
            res.status = LpResult::Status::Unbounded;
            return res;
        }
        res.status = LpResult::Status::Optimal;
        res.objective = -tab_[rows_][cols_];
        res.x.assign(n_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = tab_[i][cols_];
        return res;
    }

  private:
    // Bland's rule; objective row holds reduced costs c_j - z_j and the
    // negated objective value in the rhs slot. Returns false on unbounded.
    bool run() {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (tab_[rows_][j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;
            std::size_t leave = rows_;
            Rat best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == rows_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rat p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == row || tab_[i][col] == 0) continue;
            Rat f = tab_[i][col];
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t n_ = 0, rows_ = 0, cols_ = 0;
    std::vector<RatVec> tab_;
    std::vector<std::size_t> basis_;
};

inline LpResult solve_lp(RatMat a, RatVec b, RatVec c) {
    return SimplexSolver().solve(std::move(a), std::move(b), std::move(c));
}

// Is q a convex combination of the given points? Feasibility-only LP.
inline bool in_convex_hull(const RatMat& points, const RatVec& q) {
    if (points.empty()) return false;
    const std::size_t d = q.size(), n = points.size();
    RatMat a(d + 1, RatVec(n, Rat(0)));
    RatVec b(d + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < d; ++i) a[i][j] = points[j][i];
        a[d][j] = 1;
    }
    for (std::size_t i = 0; i < d; ++i) b[i] = q[i];
    b[d] = 1;
    auto res = solve_lp(std::move(a), std::move(b), RatVec(n, Rat(0)));
    return res.status == LpResult::Status::Optimal;
}

}  // namespace zstab
