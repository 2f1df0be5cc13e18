// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/algebra.hpp"

#include <map>
#include <vector>

namespace zstab {

// A point together with a cocharacter of its stabiliser.
struct GradedPoint {
    Scene scene;
    Cocharacter lambda;

    GradedPoint(Scene s, Cocharacter l) : scene(std::move(s)), lambda(std::move(l)) {
        if (!fixes_point(scene, lambda))
            throw precondition_error("graded point: cocharacter does not fix the point");
    }
};

struct SpecialisationResult {
    std::vector<std::vector<std::complex<double>>> limit_point;
    std::vector<long long> levels;                    // per-factor minimal pairing
    std::vector<std::vector<std::size_t>> supports;   // surviving indices per factor
};

// Limit of the point under the one-parameter subgroup: per factor, only the
// coordinates attaining the minimal pairing survive.
inline SpecialisationResult specialise(const Scene& scene, const Cocharacter& lambda) {
    if (lambda.size() != scene.rank) throw precondition_error("cocharacter length must equal rank");
    SpecialisationResult out;
    out.limit_point = scene.point;
    out.levels.resize(scene.factor_count());
    out.supports.resize(scene.factor_count());
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        const auto& w = scene.factors[k].weights;
        std::vector<char> in_supp(w.size(), 0);
        for (std::size_t s : scene.supports[k]) in_supp[s] = 1;
        long long m = pairing(w[scene.supports[k][0]], lambda);
        for (std::size_t i : scene.supports[k]) m = std::min(m, pairing(w[i], lambda));
        out.levels[k] = m;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (in_supp[i] && pairing(w[i], lambda) == m)
                out.supports[k].push_back(i);
            else
                out.limit_point[k][i] = {0.0, 0.0};
        }
    }
    return out;
}

inline Scene limit_scene(const Scene& scene, const Cocharacter& lambda) {
    Scene out = scene;
    out.point = specialise(scene, lambda).limit_point;
    out.rebuild_supports();
    return out;
}

// Equivariant specialisation: (x, zeta) degenerates under lambda to the
// limit point graded by the composite zeta + lambda.
inline GradedPoint equivariant_specialise(const GradedPoint& g, const Cocharacter& lambda) {
    if (lambda.size() != g.scene.rank) throw precondition_error("cocharacter length must equal rank");
    Cocharacter composite(g.lambda.size());
    for (std::size_t i = 0; i < composite.size(); ++i) composite[i] = g.lambda[i] + lambda[i];
    return GradedPoint(limit_scene(g.scene, lambda), composite);
}

// One connected component of the stack of graded points of BG: a Weyl orbit
// of cocharacters, its canonical representative, and the block structure of
// the centraliser.
struct GradComponent {
    Cocharacter representative;
    std::size_t orbit_size = 0;
    std::vector<std::vector<std::size_t>> levi_blocks;
};

inline std::vector<std::vector<std::size_t>> levi_blocks_of(const Cocharacter& rep) {
    std::map<long long, std::vector<std::size_t>, std::greater<long long>> by_value;
    for (std::size_t i = 0; i < rep.size(); ++i) by_value[rep[i]].push_back(i);
    std::vector<std::vector<std::size_t>> blocks;
    for (auto& [value, idx] : by_value) blocks.push_back(std::move(idx));
    return blocks;
}

// Enumerates Weyl orbits of cocharacters with entries in [-bound, bound],
// one component per orbit. Orbits may extend beyond the box; their full size
// is reported. Components are sorted by representative.
inline std::vector<GradComponent> grad_components_BG(const WeylAction& datum, long long bound) {
    if (bound < 1) throw precondition_error("grad_components_BG: bound must be >= 1");
    const std::size_t r = datum.rank();
    double cells = std::pow(2.0 * static_cast<double>(bound) + 1.0, static_cast<double>(r));
    if (cells > 2e6) throw precondition_error("grad_components_BG: box too large");

    std::map<Cocharacter, GradComponent> by_rep;
    Cocharacter v(r, -bound);
    while (true) {
        Cocharacter rep = datum.canonical(v);
        if (!by_rep.count(rep)) {
            GradComponent c;
            c.representative = rep;
            c.orbit_size = datum.orbit(rep).size();
            c.levi_blocks = levi_blocks_of(rep);
            by_rep.emplace(rep, std::move(c));
        }
        std::size_t pos = 0;
        while (pos < r && v[pos] == bound) v[pos++] = -bound;
        if (pos == r) break;
        ++v[pos];
    }
    std::vector<GradComponent> out;
    out.reserve(by_rep.size());
    for (auto& [rep, comp] : by_rep) out.push_back(std::move(comp));
    return out;
}

// Dimension of the space of Weyl-invariant complex linear functionals on the
// cocharacter lattice.
inline std::size_t charges_dimension_BG(const WeylAction& datum) {
    const std::size_t r = datum.rank();
    RatMat rows;
    for (const auto& g : datum.generators()) {
        // invariance chi(g v) = chi(v) for all v  <=>  (g^T - I) chi = 0
        for (std::size_t j = 0; j < r; ++j) {
            RatVec row(r);
            for (std::size_t i = 0; i < r; ++i) row[i] = Rat(g[i][j]) - Rat(i == j ? 1 : 0);
            rows.push_back(std::move(row));
        }
    }
    return nullspace(std::move(rows), r).size();
}

}  // namespace zstab
