// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace zstab {

// Dense exact linear algebra over the rationals. Matrices are row vectors of
// equal length; everything here is desk scale (dimensions <= a few dozen).

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rat inv = m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rat_rank(RatMat m) { return rref(m).size(); }

// Basis of {x : Mx = 0} for an m x n matrix; each basis vector has length n.
inline RatMat nullspace(RatMat m, std::size_t n_cols) {
    RatMat basis;
    if (m.empty()) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            RatVec e(n_cols, Rat(0));
            e[j] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n_cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < n_cols; ++j) {
        if (is_pivot[j]) continue;
        RatVec v(n_cols, Rat(0));
        v[j] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves Ax = b exactly; nullopt when inconsistent. If the system is
// underdetermined, free variables are set to zero.
inline std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    // pivot in the augmented column means inconsistency
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// True when every vector of `sub` lies in the span of `space` (vectors are rows).
inline bool span_contains(const RatMat& space, const RatMat& sub) {
    if (sub.empty()) return true;
    RatMat stacked = space;
    std::size_t base = rat_rank(stacked);
    for (const auto& v : sub) {
        RatMat probe = space;
        probe.push_back(v);
        if (rat_rank(std::move(probe)) != base) return false;
    }
    return true;
}

}  // namespace zstab
