// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/linalg.hpp"
#include "zstab/rational.hpp"

#include <functional>
#include <vector>

namespace zstab {

// Wolfe's nearest-point algorithm: the minimum-norm point of a polytope given
// by a linear minimisation oracle. Everything is exact rational, so the
// result is the exact Euclidean projection of the origin onto the polytope.
//
// The oracle must return, for a direction d, a point of the polytope
// minimising <d, .>, drawn from a fixed finite ground set (ties broken
// deterministically); that guarantees finite termination.
struct MinNormResult {
    RatVec point;   // the projection of the origin
    Rat norm2;      // squared distance from the origin
};

inline MinNormResult min_norm_point(std::size_t dim,
                                    const std::function<RatVec(const RatVec&)>& oracle) {
    auto dot2 = [](const RatVec& a, const RatVec& b) {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<RatVec> corral{oracle(RatVec(dim, Rat(0)))};
    RatVec weights{Rat(1)};
    RatVec x = corral[0];

    const int max_outer = 20000;
    for (int outer = 0; outer < max_outer; ++outer) {
        RatVec p = oracle(x);
        if (dot2(x, p) >= dot2(x, x)) {
            MinNormResult res;
            res.point = x;
            res.norm2 = dot2(x, x);
            return res;
        }
        corral.push_back(p);
        weights.push_back(Rat(0));

        for (;;) {
            // minimum-norm point of the affine hull of the corral:
            // solve [G 1; 1^T 0] [alpha; mu] = [0; 1]
            const std::size_t s = corral.size();
            RatMat sys(s + 1, RatVec(s + 1, Rat(0)));
            RatVec rhs(s + 1, Rat(0));
            for (std::size_t i = 0; i < s; ++i) {
                for (std::size_t j = 0; j < s; ++j) sys[i][j] = dot2(corral[i], corral[j]);
                sys[i][s] = 1;
                sys[s][i] = 1;
            }
            rhs[s] = 1;
            auto sol = solve_linear(std::move(sys), std::move(rhs));
            if (!sol) throw numeric_error("min_norm_point: affine subproblem inconsistent");
            RatVec alpha(sol->begin(), sol->begin() + static_cast<long>(s));

            bool interior = true;
            for (const auto& aj : alpha) interior = interior && aj > 0;
            if (interior) {
                weights = alpha;
                x.assign(dim, Rat(0));
                for (std::size_t j = 0; j < s; ++j)
                    for (std::size_t i = 0; i < dim; ++i) x[i] += alpha[j] * corral[j][i];
                break;
            }
            // step from the current convex combination toward alpha until a
            // weight hits zero, then drop those points
            Rat theta = 1;
            for (std::size_t j = 0; j < s; ++j) {
                if (alpha[j] <= 0) {
                    Rat cand = weights[j] / (weights[j] - alpha[j]);
                    if (cand < theta) theta = cand;
                }
            }
            std::vector<RatVec> next_corral;
            RatVec next_weights;
            for (std::size_t j = 0; j < s; ++j) {
                Rat w = weights[j] + theta * (alpha[j] - weights[j]);
                if (w > 0) {
                    next_corral.push_back(corral[j]);
                    next_weights.push_back(w);
                }
            }
            corral = std::move(next_corral);
            weights = std::move(next_weights);
            x.assign(dim, Rat(0));
            for (std::size_t j = 0; j < corral.size(); ++j)
                for (std::size_t i = 0; i < dim; ++i) x[i] += weights[j] * corral[j][i];
        }
    }
    throw numeric_error("min_norm_point: iteration cap exceeded");
}

}  // namespace zstab
