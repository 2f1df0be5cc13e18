// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/scenario.hpp"

#include <complex>
#include <string>
#include <vector>

namespace zstab::testing {

struct FactorSpec {
    std::vector<std::vector<long long>> w;
    std::vector<std::complex<double>> x;
    std::vector<std::string> u = {};
};

inline Scene make_scene(std::size_t rank, std::vector<FactorSpec> fs) {
    std::vector<LinearisedFactor> factors;
    std::vector<std::vector<std::complex<double>>> point;
    for (auto& f : fs) {
        LinearisedFactor lf;
        lf.weights = f.w;
        lf.label = "F" + std::to_string(factors.size());
        if (f.u.empty())
            lf.shift.assign(rank, Rat(0));
        else
            for (const auto& s : f.u) lf.shift.push_back(parse_rational(s));
        factors.push_back(std::move(lf));
        point.push_back(f.x);
    }
    return Scene(rank, std::move(factors), std::move(point));
}

// rank-1 shortcut: one factor with scalar weights
inline Scene line_scene(std::vector<long long> weights, std::vector<std::complex<double>> x,
                        const std::string& shift = "0") {
    std::vector<std::vector<long long>> rows;
    for (auto w : weights) rows.push_back({w});
    return make_scene(1, {{rows, std::move(x), {shift}}});
}

inline CentralCharge charge_i(std::size_t factors = 1) { return CentralCharge::classical(factors); }

inline CentralCharge make_charge(std::vector<std::string> coeffs, const std::string& phase = "0") {
    std::vector<CRat> cs;
    for (const auto& c : coeffs) cs.push_back(parse_complex(c));
    return CentralCharge(std::move(cs), parse_phase_string(phase));
}

}  // namespace zstab::testing
