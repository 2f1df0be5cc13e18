// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/charge.hpp"
#include "zstab/minnorm.hpp"
#include "zstab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace zstab {

enum class StabilityClass { Stable, Polystable, StrictlySemistable, Unstable };

inline const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "Stable";
        case StabilityClass::Polystable: return "Polystable";
        case StabilityClass::StrictlySemistable: return "StrictlySemistable";
        case StabilityClass::Unstable: return "Unstable";
    }
    return "?";
}

// The per-factor margin coefficients r_k = Im(e^{-i phi} c_k) as rationals up
// to a common positive scale. Quarter-pi phases with rational coefficients
// are exact by construction; anything else falls back to the dyadic values of
// the doubles, which keeps all downstream polytope arithmetic exact relative
// to those inputs (the verdict is then tagged numeric).
struct MarginWeights {
    RatVec rho;
    double scale = 1.0;
    bool exact = true;
};

inline MarginWeights margin_weights(const CentralCharge& charge) {
    MarginWeights w;
    w.rho.resize(charge.factor_count());
    if (charge.exact_margins()) {
        for (std::size_t k = 0; k < charge.factor_count(); ++k) w.rho[k] = charge.rho(k);
        w.scale = charge.frame().scale();
        w.exact = true;
    } else {
        for (std::size_t k = 0; k < charge.factor_count(); ++k) w.rho[k] = rat_of_double(charge.r(k));
        w.scale = 1.0;
        w.exact = false;
    }
    return w;
}

struct Verdict {
    StabilityClass cls = StabilityClass::Unstable;
    std::optional<Cocharacter> witness;  // destabiliser or zero-margin degeneration
    // Unstable: margin of the witness (negative). StrictlySemistable: 0.
    // Polystable/Stable: the maximal uniform barycentric slack of the shift in
    // the weighted polytope (positive).
    double margin = 0.0;
    std::optional<Rat> margin_exact;
    bool exact = true;          // exact classification vs dyadic (numeric) route
    bool near_boundary = false; // numeric route came within 1e-9 of a predicate flip
};

struct ClassifyOptions {
    bool allow_mixed = false;    // accept mixed-sign r_k and classify by brute force
    long long oracle_bound = 0;  // 0: automatic (1 + weight spread)
};

namespace detail {

struct PolytopeProblem {
    const Scene* scene = nullptr;
    RatVec rho;                          // per factor, only > 0 entries used
    std::vector<std::size_t> active;     // factors with rho > 0
    RatVec shift;                        // a = sum rho_k u_k over active factors
    std::size_t mu_count = 0;            // total supported coordinates over active factors

    PolytopeProblem(const Scene& s, const RatVec& r) : scene(&s), rho(r) {
        shift.assign(s.rank, Rat(0));
        for (std::size_t k = 0; k < s.factor_count(); ++k) {
            if (rho[k] <= 0) continue;
            active.push_back(k);
            mu_count += s.supports[k].size();
            for (std::size_t c = 0; c < s.rank; ++c) shift[c] += rho[k] * s.factors[k].shift[c];
        }
    }

    // Equality skeleton on the barycentric variables: one row per active
    // factor (sum = 1) and one row per ambient coordinate (weighted barycenter
    // equals the shift).
    void fill_base(RatMat& a, RatVec& b, std::size_t total_cols) const {
        const std::size_t r = scene->rank;
        a.assign(active.size() + r, RatVec(total_cols, Rat(0)));
        b.assign(active.size() + r, Rat(0));
        std::size_t col = 0;
        for (std::size_t idx = 0; idx < active.size(); ++idx) {
            std::size_t k = active[idx];
            for (std::size_t i : scene->supports[k]) {
                a[idx][col] = 1;
                for (std::size_t c = 0; c < r; ++c)
                    a[active.size() + c][col] = rho[k] * Rat(scene->factors[k].weights[i][c]);
                ++col;
            }
            b[idx] = 1;
        }
        for (std::size_t c = 0; c < r; ++c) b[active.size() + c] = shift[c];
    }
};

// Maximal t such that the shift is a weighted barycenter with all barycentric
// coordinates >= t. Infeasible (nullopt) means the shift lies outside the
// polytope; t = 0 means relative boundary; t > 0 means relative interior.
inline std::optional<Rat> interiority(const PolytopeProblem& p) {
    const std::size_t n = p.mu_count;
    const std::size_t rows_eq = p.active.size() + p.scene->rank;
    const std::size_t cols = n + 1 + n;  // mu, t, slacks
    RatMat a;
    RatVec b;
    p.fill_base(a, b, cols);
    a.resize(rows_eq + n, RatVec(cols, Rat(0)));
    b.resize(rows_eq + n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        a[rows_eq + i][i] = 1;
        a[rows_eq + i][n] = -1;
        a[rows_eq + i][n + 1 + i] = -1;
    }
    RatVec c(cols, Rat(0));
    c[n] = 1;
    auto res = solve_lp(std::move(a), std::move(b), std::move(c));
    if (res.status != LpResult::Status::Optimal) return std::nullopt;
    return res.objective;
}

// Supported coordinates that can carry positive barycentric weight in some
// representation of the shift; these span the minimal face containing it.
inline std::vector<std::vector<std::size_t>> usable_coordinates(const PolytopeProblem& p) {
    const std::size_t n = p.mu_count;
    RatMat a;
    RatVec b;
    p.fill_base(a, b, n);
    std::vector<std::vector<std::size_t>> usable(p.scene->factor_count());
    std::size_t col = 0;
    for (std::size_t idx = 0; idx < p.active.size(); ++idx) {
        std::size_t k = p.active[idx];
        for (std::size_t i : p.scene->supports[k]) {
            RatVec c(n, Rat(0));
            c[col] = 1;
            auto res = solve_lp(a, b, std::move(c));
            if (res.status == LpResult::Status::Optimal && res.objective > 0)
                usable[k].push_back(i);
            ++col;
        }
    }
    return usable;
}

// A direction in the relative interior of the normal cone of the minimal face
// spanned by the usable coordinates: pairings are equal on the usable set of
// each active factor and strictly larger than on the rest of the support.
inline RatVec face_normal_direction(const PolytopeProblem& p,
                                    const std::vector<std::vector<std::size_t>>& usable) {
    const std::size_t r = p.scene->rank;
    // variables: z+ (r), z- (r), t, then one slack per inequality/box row
    std::vector<RatVec> ineq;   // rows with "expr - t >= 0"
    RatMat eq_rows;             // rows with "expr = 0"
    for (std::size_t k : p.active) {
        const auto& w = p.scene->factors[k].weights;
        const auto& u = usable[k];
        for (std::size_t j = 1; j < u.size(); ++j) {
            RatVec row(r);
            for (std::size_t c = 0; c < r; ++c) row[c] = Rat(w[u[j]][c] - w[u[0]][c]);
            eq_rows.push_back(std::move(row));
        }
        for (std::size_t i : p.scene->supports[k]) {
            if (std::find(u.begin(), u.end(), i) != u.end()) continue;
            RatVec row(r);
            for (std::size_t c = 0; c < r; ++c) row[c] = Rat(w[u[0]][c] - w[i][c]);
            ineq.push_back(std::move(row));
        }
    }
    const std::size_t n_ineq = ineq.size();
    const std::size_t cols = 2 * r + 1 + n_ineq + 2 * r;  // z+, z-, t, ineq slacks, box slacks
    RatMat a(eq_rows.size() + n_ineq + 2 * r, RatVec(cols, Rat(0)));
    RatVec b(a.size(), Rat(0));
    std::size_t row = 0;
    for (const auto& e : eq_rows) {
        for (std::size_t c = 0; c < r; ++c) {
            a[row][c] = e[c];
            a[row][r + c] = -e[c];
        }
        ++row;
    }
    for (std::size_t q = 0; q < n_ineq; ++q) {
        for (std::size_t c = 0; c < r; ++c) {
            a[row][c] = ineq[q][c];
            a[row][r + c] = -ineq[q][c];
        }
        a[row][2 * r] = -1;
        a[row][2 * r + 1 + q] = -1;
        ++row;
    }
    for (std::size_t c = 0; c < 2 * r; ++c) {
        a[row][c] = 1;
        a[row][2 * r + 1 + n_ineq + c] = 1;
        b[row] = 1;
        ++row;
    }
    RatVec c(cols, Rat(0));
    c[2 * r] = 1;
    auto res = solve_lp(std::move(a), std::move(b), std::move(c));
    if (res.status != LpResult::Status::Optimal || res.objective <= 0)
        throw numeric_error("face_normal_direction: no separating direction found");
    RatVec z(r);
    for (std::size_t cidx = 0; cidx < r; ++cidx) z[cidx] = res.x[cidx] - res.x[r + cidx];
    return z;
}

// Exact Euclidean projection of the shift onto the weighted polytope.
struct Projection {
    RatVec point;   // nearest point of Q to the shift, in scaled coordinates
    Rat dist2;      // squared distance, scaled coordinates
};

inline Projection project_shift(const PolytopeProblem& p) {
    const std::size_t r = p.scene->rank;
    auto oracle = [&](const RatVec& d) {
        RatVec pt(r, Rat(0));
        for (std::size_t k : p.active) {
            const auto& w = p.scene->factors[k].weights;
            std::size_t best = p.scene->supports[k][0];
            Rat best_val = 0;
            bool first = true;
            for (std::size_t i : p.scene->supports[k]) {
                Rat v = 0;
                for (std::size_t c = 0; c < r; ++c) v += d[c] * Rat(w[i][c]);
                if (first || v < best_val) {
                    best = i;
                    best_val = v;
                    first = false;
                }
            }
            for (std::size_t c = 0; c < r; ++c) pt[c] += p.rho[k] * Rat(w[best][c]);
        }
        for (std::size_t c = 0; c < r; ++c) pt[c] -= p.shift[c];
        return pt;
    };
    auto res = min_norm_point(r, oracle);
    Projection out;
    out.dist2 = res.norm2;
    out.point.resize(r);
    for (std::size_t c = 0; c < r; ++c) out.point[c] = res.point[c] + p.shift[c];
    return out;
}

// Integer flat directions of the weighted polytope must fix the whole point;
// otherwise a zero-margin degeneration leaves the orbit (this only bites when
// some factor has r_k = 0). Returns a violating direction if any.
inline std::optional<RatVec> flat_direction_violation(const Scene& scene, const RatVec& rho) {
    RatMat rows;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        if (rho[k] <= 0) continue;
        const auto& supp = scene.supports[k];
        const auto& w = scene.factors[k].weights;
        for (std::size_t j = 1; j < supp.size(); ++j) {
            RatVec row(scene.rank);
            for (std::size_t c = 0; c < scene.rank; ++c)
                row[c] = Rat(w[supp[j]][c] - w[supp[0]][c]);
            rows.push_back(std::move(row));
        }
    }
    for (auto& f : nullspace(std::move(rows), scene.rank))
        if (!fixes_point(scene, f)) return f;
    return std::nullopt;
}

inline Cocharacter to_cocharacter(const RatVec& v) {
    auto prim = primitive_integer_vector(v);
    auto small = to_int64_checked(prim);
    if (!small) throw numeric_error("cocharacter entries exceed 64 bits");
    return *small;
}

inline double norm2d(const Cocharacter& v) {
    double s = 0;
    for (long long x : v) s += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(s);
}

}  // namespace detail

// V-representation of the weighted polytope Q = sum of r_k-scaled supported
// weight polytopes, together with the shift a = sum r_k u_k. Coordinates are
// scaled by the charge frame's positive scale; every stability predicate is
// invariant under that scale.
struct WeightedPolytope {
    RatMat vertices;
    RatVec shift;
    std::size_t affine_hull_dim = 0;
    bool exact = true;
    double scale = 1.0;
};

inline WeightedPolytope weighted_polytope(const Scene& scene, const CentralCharge& charge) {
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    auto mw = margin_weights(charge);
    for (const auto& q : mw.rho)
        if (q < 0) throw precondition_error("weighted_polytope: negative r_k (mixed charge)");
    detail::PolytopeProblem p(scene, mw.rho);

    // per-factor extreme supported weights, scaled
    std::vector<RatMat> factor_vertices;
    for (std::size_t k : p.active) {
        RatMat pts;
        for (std::size_t i : scene.supports[k]) {
            RatVec v(scene.rank);
            for (std::size_t c = 0; c < scene.rank; ++c)
                v[c] = mw.rho[k] * Rat(scene.factors[k].weights[i][c]);
            if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(std::move(v));
        }
        RatMat ext;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            RatMat others;
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) others.push_back(pts[j]);
            if (!in_convex_hull(others, pts[i])) ext.push_back(pts[i]);
        }
        factor_vertices.push_back(std::move(ext));
    }

    // Minkowski sums of the per-factor vertex selections
    RatMat candidates{RatVec(scene.rank, Rat(0))};
    for (const auto& fv : factor_vertices) {
        if (candidates.size() * fv.size() > 20000)
            throw precondition_error("weighted_polytope: too many vertex candidates");
        RatMat next;
        for (const auto& base : candidates) {
            for (const auto& v : fv) {
                RatVec sum(scene.rank);
                for (std::size_t c = 0; c < scene.rank; ++c) sum[c] = base[c] + v[c];
                next.push_back(std::move(sum));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        candidates = std::move(next);
    }

    WeightedPolytope out;
    out.shift = p.shift;
    out.exact = mw.exact;
    out.scale = mw.scale;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        RatMat others;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (j != i) others.push_back(candidates[j]);
        if (!in_convex_hull(others, candidates[i])) out.vertices.push_back(candidates[i]);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    RatMat diffs;
    for (std::size_t i = 1; i < out.vertices.size(); ++i) {
        RatVec d(scene.rank);
        for (std::size_t c = 0; c < scene.rank; ++c) d[c] = out.vertices[i][c] - out.vertices[0][c];
        diffs.push_back(std::move(d));
    }
    out.affine_hull_dim = rat_rank(std::move(diffs));
    return out;
}

// Exhaustive oracle: evaluates the stability margin of every nonzero
// cocharacter in the box [-bound, bound]^rank.
inline Verdict brute_force_classify(const Scene& scene, const CentralCharge& charge,
                                    long long bound) {
    if (bound < 1) throw precondition_error("brute_force_classify: bound must be >= 1");
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    auto mw = margin_weights(charge);
    double cells = std::pow(2.0 * static_cast<double>(bound) + 1.0, static_cast<double>(scene.rank));
    if (cells > 4e6) throw precondition_error("brute_force_classify: box too large");

    auto scaled_margin = [&](const Cocharacter& lam) {
        Rat m = 0;
        for (std::size_t k = 0; k < scene.factor_count(); ++k)
            m += mw.rho[k] * hm_weight(scene, k, lam);
        return m;
    };

    Verdict v;
    v.exact = mw.exact;
    std::optional<Cocharacter> worst;        // most negative normalized margin
    double worst_normalized = 0.0;
    Rat worst_margin = 0;
    std::optional<Cocharacter> dropper;      // zero margin, support-dropping
    Rat min_margin = 0;
    bool min_set = false;

    Cocharacter lam(scene.rank, -bound);
    for (;;) {
        if (!is_zero(lam)) {
            Rat m = scaled_margin(lam);
            if (!min_set || m < min_margin) {
                min_margin = m;
                min_set = true;
            }
            if (m < 0) {
                double normalized = to_double(m) * mw.scale / detail::norm2d(lam);
                if (!worst || normalized < worst_normalized) {
                    worst = lam;
                    worst_normalized = normalized;
                    worst_margin = m;
                }
            } else if (m == 0 && !dropper) {
                auto sp = specialise(scene, lam);
                if (sp.supports != scene.supports) dropper = lam;
            }
        }
        std::size_t pos = 0;
        while (pos < scene.rank && lam[pos] == bound) lam[pos++] = -bound;
        if (pos == scene.rank) break;
        ++lam[pos];
    }

    if (worst) {
        v.cls = StabilityClass::Unstable;
        v.witness = worst;
        v.margin = to_double(worst_margin) * mw.scale;
        if (mw.exact && mw.scale == 1.0) v.margin_exact = worst_margin;
        return v;
    }
    if (dropper) {
        v.cls = StabilityClass::StrictlySemistable;
        v.witness = dropper;
        v.margin = 0.0;
        v.margin_exact = Rat(0);
        return v;
    }
    bool stab_trivial = stabiliser_lie(scene).empty();
    v.cls = stab_trivial ? StabilityClass::Stable : StabilityClass::Polystable;
    v.margin = to_double(min_margin) * mw.scale;
    if (mw.exact && mw.scale == 1.0) v.margin_exact = min_margin;
    return v;
}

// Exact classification through the weighted-polytope criterion. The shift
// lies outside the polytope (unstable), on its relative boundary (strictly
// semistable), or in its relative interior (polystable; stable when the
// stabiliser is finite). Degenerate flat directions are checked against the
// full stabiliser so that factors with r_k = 0 cannot hide orbit escapes.
inline Verdict classify(const Scene& scene, const CentralCharge& charge,
                        const ClassifyOptions& opts = {}) {
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    auto mw = margin_weights(charge);
    bool mixed = false;
    for (const auto& q : mw.rho) mixed = mixed || q < 0;
    if (mixed) {
        if (!opts.allow_mixed)
            throw precondition_error("classify: mixed-sign r_k (pass allow_mixed for the oracle route)");
        long long bound = opts.oracle_bound > 0 ? opts.oracle_bound : 1 + weight_spread(scene);
        return brute_force_classify(scene, charge, bound);
    }

    detail::PolytopeProblem p(scene, mw.rho);
    Verdict v;
    v.exact = mw.exact;

    if (p.active.empty()) {
        // every margin vanishes identically; stability is decided by whether
        // degenerations can leave the orbit at all
        auto bad = detail::flat_direction_violation(scene, mw.rho);
        if (bad) {
            v.cls = StabilityClass::StrictlySemistable;
            v.witness = detail::to_cocharacter(*bad);
            v.margin = 0.0;
            v.margin_exact = Rat(0);
            return v;
        }
        v.cls = stabiliser_lie(scene).empty() ? StabilityClass::Stable : StabilityClass::Polystable;
        v.margin = 0.0;
        v.margin_exact = Rat(0);
        return v;
    }

    auto t_star = detail::interiority(p);
    if (!t_star) {
        auto proj = detail::project_shift(p);
        RatVec dirvec(scene.rank);
        for (std::size_t c = 0; c < scene.rank; ++c) dirvec[c] = proj.point[c] - p.shift[c];
        Cocharacter witness;
        if (mw.exact) {
            witness = detail::to_cocharacter(dirvec);
        } else {
            // dyadic route: small integer approximant of the optimal direction
            double dist = std::sqrt(to_double(proj.dist2)) * mw.scale;
            double nrm = 0;
            std::vector<double> dd(scene.rank);
            for (std::size_t c = 0; c < scene.rank; ++c) {
                dd[c] = to_double(dirvec[c]);
                nrm += dd[c] * dd[c];
            }
            nrm = std::sqrt(nrm);
            bool found = false;
            for (long long s = 1; s <= 65536 && !found; ++s) {
                Cocharacter cand(scene.rank);
                bool nonzero = false;
                for (std::size_t c = 0; c < scene.rank; ++c) {
                    cand[c] = std::llround(static_cast<double>(s) * dd[c] / nrm);
                    nonzero = nonzero || cand[c] != 0;
                }
                if (!nonzero) continue;
                Rat m = 0;
                for (std::size_t k = 0; k < scene.factor_count(); ++k)
                    m += mw.rho[k] * hm_weight(scene, k, cand);
                double normalized = to_double(m) * mw.scale / detail::norm2d(cand);
                if (normalized <= -dist + 1e-6) {
                    witness = cand;
                    found = true;
                }
            }
            if (!found) witness = detail::to_cocharacter(dirvec);
        }
        Rat wm = 0;
        for (std::size_t k = 0; k < scene.factor_count(); ++k)
            wm += mw.rho[k] * hm_weight(scene, k, witness);
        v.cls = StabilityClass::Unstable;
        v.witness = witness;
        v.margin = to_double(wm) * mw.scale;
        if (mw.exact && mw.scale == 1.0) v.margin_exact = wm;
        v.near_boundary = !mw.exact && to_double(proj.dist2) < 1e-18;
        return v;
    }

    if (*t_star == 0) {
        auto usable = detail::usable_coordinates(p);
        auto z = detail::face_normal_direction(p, usable);
        RatVec neg(z.size());
        for (std::size_t c = 0; c < z.size(); ++c) neg[c] = -z[c];
        v.cls = StabilityClass::StrictlySemistable;
        v.witness = detail::to_cocharacter(neg);
        v.margin = 0.0;
        v.margin_exact = Rat(0);
        return v;
    }

    auto bad = detail::flat_direction_violation(scene, mw.rho);
    if (bad) {
        v.cls = StabilityClass::StrictlySemistable;
        v.witness = detail::to_cocharacter(*bad);
        v.margin = 0.0;
        v.margin_exact = Rat(0);
        return v;
    }
    v.cls = stabiliser_lie(scene).empty() ? StabilityClass::Stable : StabilityClass::Polystable;
    v.margin = to_double(*t_star);
    if (mw.exact) v.margin_exact = *t_star;
    v.near_boundary = !mw.exact && *t_star < Rat(1, 1000000000);
    return v;
}

// Optimal destabilising data for an unstable point: the Euclidean steepest
// descent direction toward the polytope and a lattice approximant.
struct Destabiliser {
    GroupDirection direction;     // unit vector
    Cocharacter rational_approx;
    double normalized_margin = 0; // equals -dist(a, Q)
    double distance = 0;          // dist(a, Q) in true margin units
    Rat dist2_scaled;             // exact squared distance in scaled coordinates
    double scale = 1.0;
};

inline Destabiliser optimal_destabiliser(const Scene& scene, const CentralCharge& charge) {
    auto mw = margin_weights(charge);
    for (const auto& q : mw.rho)
        if (q < 0) throw precondition_error("optimal_destabiliser: mixed-sign r_k");
    detail::PolytopeProblem p(scene, mw.rho);
    if (p.active.empty() || detail::interiority(p))
        throw precondition_error("optimal_destabiliser: point is not unstable");
    auto proj = detail::project_shift(p);
    Destabiliser out;
    out.dist2_scaled = proj.dist2;
    out.scale = mw.scale;
    out.distance = std::sqrt(to_double(proj.dist2)) * mw.scale;
    out.normalized_margin = -out.distance;
    RatVec dirvec(scene.rank);
    double nrm = 0;
    out.direction.resize(scene.rank);
    for (std::size_t c = 0; c < scene.rank; ++c) {
        dirvec[c] = proj.point[c] - p.shift[c];
        out.direction[c] = to_double(dirvec[c]);
        nrm += out.direction[c] * out.direction[c];
    }
    nrm = std::sqrt(nrm);
    for (auto& d : out.direction) d /= nrm;
    Verdict v = classify(scene, charge);
    if (!v.witness) throw numeric_error("optimal_destabiliser: classification lost the witness");
    out.rational_approx = *v.witness;
    return out;
}

// dist(a, Q) in true margin units; the asymptotic residual floor of the
// moment-map flow on unstable points.
inline double polytope_distance(const Scene& scene, const CentralCharge& charge) {
    auto mw = margin_weights(charge);
    for (const auto& q : mw.rho)
        if (q < 0) throw precondition_error("polytope_distance: mixed-sign r_k");
    detail::PolytopeProblem p(scene, mw.rho);
    if (p.active.empty()) return 0.0;
    auto proj = detail::project_shift(p);
    return std::sqrt(to_double(proj.dist2)) * mw.scale;
}

}  // namespace zstab
