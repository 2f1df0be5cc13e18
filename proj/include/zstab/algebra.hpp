// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/linalg.hpp"
#include "zstab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace zstab {

// A one-parameter subgroup of the rank-r torus: an integer vector. The zero
// vector is the trivial subgroup.
using Cocharacter = std::vector<long long>;

// A real direction in the Lie algebra of the compact torus. Rational entries
// correspond to multiples of cocharacters; irrational entries are permitted.
using GroupDirection = std::vector<double>;

inline Cocharacter zero_cocharacter(std::size_t rank) { return Cocharacter(rank, 0); }

inline bool is_zero(const Cocharacter& c) {
    return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
}

// One linearised factor of the ambient product of projective spaces: an
// integer weight row per homogeneous coordinate plus a rational shift of the
// linearisation.
struct LinearisedFactor {
    std::vector<std::vector<long long>> weights;  // (n_k + 1) rows x r columns
    RatVec shift;                                 // length r
    std::string label;
};

// A linearised torus action together with a marked point.
struct Scene {
    std::size_t rank = 0;
    std::vector<LinearisedFactor> factors;
    std::vector<std::vector<std::complex<double>>> point;

    // Derived: indices of the supported coordinates per factor. Membership is
    // exact: a coordinate is supported iff it is not the literal zero input.
    std::vector<std::vector<std::size_t>> supports;

    Scene() = default;
    Scene(std::size_t r, std::vector<LinearisedFactor> f,
          std::vector<std::vector<std::complex<double>>> pt)
        : rank(r), factors(std::move(f)), point(std::move(pt)) {
        validate();
        rebuild_supports();
    }

    std::size_t factor_count() const { return factors.size(); }

    void validate() const {
        if (rank == 0) throw precondition_error("scene rank must be positive");
        if (factors.empty()) throw precondition_error("scene needs at least one factor");
        if (point.size() != factors.size())
            throw precondition_error("point must have one coordinate vector per factor");
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const auto& f = factors[k];
            if (f.weights.size() < 2)
                throw precondition_error("factor '" + f.label + "' needs at least two coordinates");
            for (const auto& row : f.weights)
                if (row.size() != rank) throw precondition_error("weight row length must equal rank");
            if (f.shift.size() != rank) throw precondition_error("shift length must equal rank");
            if (point[k].size() != f.weights.size())
                throw precondition_error("coordinate count mismatch in factor '" + f.label + "'");
        }
    }

    void rebuild_supports() {
        supports.assign(factors.size(), {});
        for (std::size_t k = 0; k < factors.size(); ++k) {
            for (std::size_t i = 0; i < point[k].size(); ++i)
                if (point[k][i] != std::complex<double>(0.0, 0.0)) supports[k].push_back(i);
            if (supports[k].empty())
                throw precondition_error("point is zero in factor '" + factors[k].label + "'");
        }
    }
};

// Largest absolute difference of supported weight entries; sets oracle boxes
// and solver divergence radii.
inline long long weight_spread(const Scene& scene) {
    long long spread = 0;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        for (std::size_t c = 0; c < scene.rank; ++c) {
            long long lo = scene.factors[k].weights[scene.supports[k][0]][c], hi = lo;
            for (std::size_t i : scene.supports[k]) {
                lo = std::min(lo, scene.factors[k].weights[i][c]);
                hi = std::max(hi, scene.factors[k].weights[i][c]);
            }
            spread = std::max(spread, hi - lo);
        }
    }
    return spread;
}

inline double pairing(const std::vector<long long>& w, const GroupDirection& v) {
    if (w.size() != v.size()) throw precondition_error("pairing: length mismatch");
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<double>(w[i]) * v[i];
    return s;
}

inline long long pairing(const std::vector<long long>& w, const Cocharacter& v) {
    if (w.size() != v.size()) throw precondition_error("pairing: length mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

inline Rat pairing(const RatVec& u, const Cocharacter& v) {
    if (u.size() != v.size()) throw precondition_error("pairing: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * Rat(v[i]);
    return s;
}

inline Rat pairing_rat(const std::vector<long long>& w, const RatVec& v) {
    if (w.size() != v.size()) throw precondition_error("pairing: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += Rat(w[i]) * v[i];
    return s;
}

// Applies exp(sigma + i*theta) to the marked point; coordinate i of factor k
// picks up e^{<w_i,sigma>} e^{i<w_i,theta>}. Factors are renormalised to unit
// norm to keep flows from overflowing.
inline Scene act(const Scene& scene, const GroupDirection& sigma, const GroupDirection& theta) {
    if (sigma.size() != scene.rank || theta.size() != scene.rank)
        throw precondition_error("act: direction length must equal rank");
    Scene out = scene;
    for (std::size_t k = 0; k < scene.factors.size(); ++k) {
        const auto& w = scene.factors[k].weights;
        std::vector<double> logmod(w.size());
        double maxlog = -std::numeric_limits<double>::infinity();
        for (std::size_t i : scene.supports[k]) {
            logmod[i] = pairing(w[i], sigma) + std::log(std::abs(scene.point[k][i]));
            maxlog = std::max(maxlog, logmod[i]);
        }
        double norm2 = 0;
        for (std::size_t i : scene.supports[k]) {
            // clamp so supported coordinates never underflow to literal zero
            double mod = std::exp(std::max(logmod[i] - maxlog, -700.0));
            double ph = std::arg(scene.point[k][i]) + pairing(w[i], theta);
            out.point[k][i] = std::polar(mod, ph);
            norm2 += mod * mod;
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i : scene.supports[k]) out.point[k][i] *= inv;
    }
    out.rebuild_supports();
    return out;
}

// Basis (rational, exact) of the Lie algebra of the stabiliser of the marked
// point: directions pairing equally with all supported weights of each factor.
inline RatMat stabiliser_lie(const Scene& scene) {
    RatMat rows;
    for (std::size_t k = 0; k < scene.factors.size(); ++k) {
        const auto& supp = scene.supports[k];
        const auto& w = scene.factors[k].weights;
        for (std::size_t j = 1; j < supp.size(); ++j) {
            RatVec row(scene.rank);
            for (std::size_t c = 0; c < scene.rank; ++c)
                row[c] = Rat(w[supp[j]][c] - w[supp[0]][c]);
            rows.push_back(std::move(row));
        }
    }
    return nullspace(std::move(rows), scene.rank);
}

inline bool fixes_point(const Scene& scene, const Cocharacter& lambda) {
    if (lambda.size() != scene.rank) throw precondition_error("cocharacter length must equal rank");
    for (std::size_t k = 0; k < scene.factors.size(); ++k) {
        const auto& supp = scene.supports[k];
        long long base = pairing(scene.factors[k].weights[supp[0]], lambda);
        for (std::size_t j = 1; j < supp.size(); ++j)
            if (pairing(scene.factors[k].weights[supp[j]], lambda) != base) return false;
    }
    return true;
}

// Exact membership of a rational direction in the stabiliser Lie algebra.
inline bool fixes_point(const Scene& scene, const RatVec& v) {
    for (std::size_t k = 0; k < scene.factors.size(); ++k) {
        const auto& supp = scene.supports[k];
        Rat base = pairing_rat(scene.factors[k].weights[supp[0]], v);
        for (std::size_t j = 1; j < supp.size(); ++j)
            if (pairing_rat(scene.factors[k].weights[supp[j]], v) != base) return false;
    }
    return true;
}

// A finite group acting on the cocharacter lattice by integer matrices, given
// by generators. Closure is computed eagerly with a hard cap.
class WeylAction {
  public:
    using Matrix = std::vector<std::vector<long long>>;

    WeylAction(std::size_t rank, std::vector<Matrix> generators, std::string name,
               std::size_t cap = 50000)
        : rank_(rank), generators_(std::move(generators)), name_(std::move(name)) {
        if (rank_ == 0) throw precondition_error("Weyl action rank must be positive");
        for (const auto& g : generators_) {
            if (g.size() != rank_) throw precondition_error("generator must be rank x rank");
            for (const auto& row : g)
                if (row.size() != rank_) throw precondition_error("generator must be rank x rank");
            if (!unimodular(g))
                throw precondition_error("generator is not invertible over the integers");
        }
        close(cap);
    }

    std::size_t rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    const std::vector<Matrix>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }

    static Cocharacter apply(const Matrix& m, const Cocharacter& v) {
        Cocharacter out(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
        return out;
    }

    std::vector<Cocharacter> orbit(const Cocharacter& v) const {
        std::set<Cocharacter> seen;
        for (const auto& g : elements_) seen.insert(apply(g, v));
        return {seen.begin(), seen.end()};
    }

    // Lexicographically maximal orbit element; the canonical representative.
    Cocharacter canonical(const Cocharacter& v) const {
        if (v.size() != rank_) throw precondition_error("cocharacter length must equal rank");
        Cocharacter best = v;
        for (const auto& g : elements_) {
            Cocharacter cand = apply(g, v);
            if (cand > best) best = cand;
        }
        return best;
    }

  private:
    static bool unimodular(const Matrix& m) {
        RatMat rm(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (auto x : m[i]) rm[i].push_back(Rat(x));
        // integer inverse exists iff det = +-1; at this scale a rank check plus
        // determinant via fraction-free elimination is simplest
        const std::size_t n = m.size();
        Rat det = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t sel = col;
            while (sel < n && rm[sel][col] == 0) ++sel;
            if (sel == n) return false;
            if (sel != col) {
                std::swap(rm[sel], rm[col]);
                det = -det;
            }
            det *= rm[col][col];
            for (std::size_t i = col + 1; i < n; ++i) {
                Rat f = rm[i][col] / rm[col][col];
                for (std::size_t j = col; j < n; ++j) rm[i][j] -= f * rm[col][j];
            }
        }
        return det == 1 || det == -1;
    }

    void close(std::size_t cap) {
        std::set<std::vector<long long>> seen;
        auto key = [this](const Matrix& m) {
            std::vector<long long> k;
            k.reserve(rank_ * rank_);
            for (const auto& row : m) k.insert(k.end(), row.begin(), row.end());
            return k;
        };
        Matrix id(rank_, std::vector<long long>(rank_, 0));
        for (std::size_t i = 0; i < rank_; ++i) id[i][i] = 1;
        std::vector<Matrix> frontier{id};
        seen.insert(key(id));
        elements_.push_back(id);
        while (!frontier.empty()) {
            std::vector<Matrix> next;
            for (const auto& m : frontier) {
                for (const auto& g : generators_) {
                    Matrix prod(rank_, std::vector<long long>(rank_, 0));
                    for (std::size_t i = 0; i < rank_; ++i)
                        for (std::size_t j = 0; j < rank_; ++j)
                            for (std::size_t l = 0; l < rank_; ++l) prod[i][j] += g[i][l] * m[l][j];
                    auto k = key(prod);
                    if (seen.insert(k).second) {
                        if (elements_.size() >= cap)
                            throw precondition_error("Weyl closure exceeds cap");
                        elements_.push_back(prod);
                        next.push_back(std::move(prod));
                    }
                }
            }
            frontier = std::move(next);
        }
    }

    std::size_t rank_;
    std::vector<Matrix> generators_;
    std::string name_;
    std::vector<Matrix> elements_;
};

// Standard Weyl data used by the CLI: gl:n (symmetric group on Z^n),
// sl:n (symmetric group on the sum-zero sublattice), torus:r (trivial).
inline WeylAction weyl_gl(std::size_t n) {
    std::vector<WeylAction::Matrix> gens;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        WeylAction::Matrix m(n, std::vector<long long>(n, 0));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
        m[j][j] = m[j + 1][j + 1] = 0;
        m[j][j + 1] = m[j + 1][j] = 1;
        gens.push_back(std::move(m));
    }
    return WeylAction(n, std::move(gens), "gl:" + std::to_string(n));
}

inline WeylAction weyl_torus(std::size_t r) { return WeylAction(r, {}, "torus:" + std::to_string(r)); }

// Cocharacter lattice of sl:n in the basis e_i - e_n (i < n).
inline WeylAction weyl_sl(std::size_t n) {
    if (n < 2) throw precondition_error("sl:n needs n >= 2");
    const std::size_t r = n - 1;
    std::vector<WeylAction::Matrix> gens;
    for (std::size_t j = 0; j + 1 < r; ++j) {  // swap of a_j, a_{j+1}
        WeylAction::Matrix m(r, std::vector<long long>(r, 0));
        for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
        m[j][j] = m[j + 1][j + 1] = 0;
        m[j][j + 1] = m[j + 1][j] = 1;
        gens.push_back(std::move(m));
    }
    {  // swap of a_{n-1}, a_n
        WeylAction::Matrix m(r, std::vector<long long>(r, 0));
        for (std::size_t i = 0; i + 1 < r; ++i) m[i][i] = 1;
        for (std::size_t j = 0; j < r; ++j) m[r - 1][j] = -1;
        gens.push_back(std::move(m));
    }
    return WeylAction(r, std::move(gens), "sl:" + std::to_string(n));
}

}  // namespace zstab
