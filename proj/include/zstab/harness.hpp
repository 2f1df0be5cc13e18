// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/moment.hpp"
#include "zstab/rng.hpp"
#include "zstab/stability.hpp"

#include <atomic>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace zstab {

struct InstanceSpec {
    int rank_min = 1, rank_max = 3;
    int factors_min = 1, factors_max = 3;
    int coords_min = 2, coords_max = 6;
    long long weight_bound = 5;
    std::uint64_t seed = 0;
    int count = 0;
    bool classical_charge = false;  // force c = i, phi = 0 on every factor

    void validate() const {
        if (rank_min < 1 || rank_max > 4 || rank_min > rank_max)
            throw precondition_error("instance spec: rank range must sit inside [1,4]");
        if (factors_min < 1 || factors_max > 3 || factors_min > factors_max)
            throw precondition_error("instance spec: factor range must sit inside [1,3]");
        if (coords_min < 2 || coords_max > 10 || coords_min > coords_max)
            throw precondition_error("instance spec: coordinate range must sit inside [2,10]");
        if (weight_bound < 1) throw precondition_error("instance spec: weight bound must be >= 1");
        if (count < 0) throw precondition_error("instance spec: count must be >= 0");
    }
};

struct Instance {
    Scene scene;
    CentralCharge charge;
};

namespace detail {

// cos/sin of k*pi/8 as literals, so coordinate synthesis never depends on
// libm rounding
inline const double kAngleCos[16] = {
    1.0, 0.9238795325112867, 0.7071067811865476, 0.3826834323650898,
    0.0, -0.3826834323650898, -0.7071067811865476, -0.9238795325112867,
    -1.0, -0.9238795325112867, -0.7071067811865476, -0.3826834323650898,
    0.0, 0.3826834323650898, 0.7071067811865476, 0.9238795325112867};
inline const double kAngleSin[16] = {
    0.0, 0.3826834323650898, 0.7071067811865476, 0.9238795325112867,
    1.0, 0.9238795325112867, 0.7071067811865476, 0.3826834323650898,
    0.0, -0.3826834323650898, -0.7071067811865476, -0.9238795325112867,
    -1.0, -0.9238795325112867, -0.7071067811865476, -0.3826834323650898};
inline const double kModulus[6] = {0.5, 0.75, 1.0, 1.25, 1.5, 2.0};

inline bool direction_moves_scene(const Scene& scene, const Cocharacter& z) {
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        const auto& supp = scene.supports[k];
        long long base = pairing(scene.factors[k].weights[supp[0]], z);
        for (std::size_t j = 1; j < supp.size(); ++j)
            if (pairing(scene.factors[k].weights[supp[j]], z) != base) return true;
    }
    return false;
}

// Rational shift inside (intent 0), on the boundary of (intent 1), or outside
// (intent 2) the supported weight polytope, with witnesses kept inside the
// +-2 cocharacter box so exhaustive oracles stay sound.
inline void assign_shifts(Scene& scene, Rng& rng, int intent) {
    Cocharacter z(scene.rank, 0);
    if (intent != 0) {
        bool moving = false;
        for (int attempt = 0; attempt < 8 && !moving; ++attempt) {
            bool nonzero = false;
            for (auto& c : z) {
                c = rng.in_range(-2, 2);
                nonzero = nonzero || c != 0;
            }
            moving = nonzero && direction_moves_scene(scene, z);
        }
        if (!moving) intent = 0;
    }
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        const auto& supp = scene.supports[k];
        const auto& w = scene.factors[k].weights;
        std::vector<std::size_t> pool;
        if (intent == 0) {
            pool.assign(supp.begin(), supp.end());
        } else {
            long long best = pairing(w[supp[0]], z);
            for (std::size_t i : supp) best = std::max(best, pairing(w[i], z));
            for (std::size_t i : supp)
                if (pairing(w[i], z) == best) pool.push_back(i);
        }
        RatVec u(scene.rank, Rat(0));
        Rat total = 0;
        for (std::size_t i : pool) {
            Rat alpha = Rat(1 + static_cast<long long>(rng.below(4)));
            total += alpha;
            for (std::size_t c = 0; c < scene.rank; ++c) u[c] += alpha * Rat(w[i][c]);
        }
        for (auto& x : u) x /= total;
        if (intent == 2) {
            for (std::size_t c = 0; c < scene.rank; ++c) u[c] += Rat(z[c], 2);
        }
        scene.factors[k].shift = std::move(u);
    }
}

}  // namespace detail

// Deterministic instance synthesis: integer weights in the box, coordinates
// from fixed modulus/phase tables with occasional dropped support, rational
// shifts hitting all verdict classes, and subsolution charges with phases
// from {0, pi/4, pi/2 - 1/10}.
inline Instance generate_scene(const InstanceSpec& spec, int index) {
    spec.validate();
    if (index < 0 || index >= spec.count) throw precondition_error("generate_scene: index out of range");
    Rng rng(Rng::mix(spec.seed, static_cast<std::uint64_t>(index)));
    const std::size_t r = static_cast<std::size_t>(rng.in_range(spec.rank_min, spec.rank_max));
    const std::size_t m = static_cast<std::size_t>(rng.in_range(spec.factors_min, spec.factors_max));

    std::vector<LinearisedFactor> factors;
    std::vector<std::vector<std::complex<double>>> point;
    for (std::size_t k = 0; k < m; ++k) {
        LinearisedFactor f;
        const std::size_t n = static_cast<std::size_t>(rng.in_range(spec.coords_min, spec.coords_max));
        f.weights.resize(n, std::vector<long long>(r));
        for (auto& row : f.weights)
            for (auto& e : row) e = rng.in_range(-spec.weight_bound, spec.weight_bound);
        f.shift.assign(r, Rat(0));
        f.label = "F" + std::to_string(k);
        std::vector<std::complex<double>> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            double mod = detail::kModulus[rng.below(6)];
            std::size_t ang = rng.below(16);
            x[i] = {mod * detail::kAngleCos[ang], mod * detail::kAngleSin[ang]};
            if (i > 0 && rng.chance(1, 5)) x[i] = {0.0, 0.0};
        }
        factors.push_back(std::move(f));
        point.push_back(std::move(x));
    }
    Scene scene(r, std::move(factors), std::move(point));
    detail::assign_shifts(scene, rng, static_cast<int>(rng.below(3)));

    if (spec.classical_charge) return {std::move(scene), CentralCharge::classical(m)};

    const std::uint64_t phase_pick = rng.below(3);
    std::vector<CRat> coeffs;
    for (std::size_t k = 0; k < m; ++k) {
        Rat rho = Rat(rng.in_range(1, 8), rng.in_range(1, 3));
        Rat sig = Rat(rng.in_range(-6, 6), 2);
        if (phase_pick == 0) {
            coeffs.emplace_back(sig, rho);  // c = sig + i rho
        } else if (phase_pick == 1) {
            coeffs.emplace_back(sig, sig + rho);  // Im - Re = rho > 0
        } else {
            Rat im = Rat(rng.in_range(1, 8));
            Rat re = -Rat(rng.in_range(0, 6), 2);
            coeffs.emplace_back(re, im);  // r_k = im cos(phi) - re sin(phi) > 0
        }
    }
    Phase phase = phase_pick == 0   ? Phase::pi_multiple(0)
                  : phase_pick == 1 ? Phase::pi_multiple(Rat(1, 4))
                                    : Phase::from_radians(kPi / 2.0 - 0.1);
    return {std::move(scene), CentralCharge(std::move(coeffs), phase)};
}

struct VerificationRow {
    int index = 0;
    StabilityClass verdict = StabilityClass::Unstable;
    FlowTrace::Status solver_status = FlowTrace::Status::MaxSteps;
    double residual_floor = 0.0;
    double distance = 0.0;       // dist(a, Q); the expected unstable floor
    bool limit_resolved = false; // strictly semistable: limit re-solve converged
    bool agree = false;
    std::string detail;
    std::string minimized;       // reproduction for disagreements
};

struct VerificationReport {
    InstanceSpec spec;
    double tol = 0.0;
    std::vector<VerificationRow> rows;
    int agreements = 0;
    int disagreements = 0;
    bool all_agree() const { return disagreements == 0; }
};

namespace detail {

inline std::string describe_instance(const Instance& inst) {
    std::ostringstream os;
    os << "rank=" << inst.scene.rank << ";factors=[";
    for (std::size_t k = 0; k < inst.scene.factor_count(); ++k) {
        const auto& f = inst.scene.factors[k];
        os << (k ? "|" : "") << "w=";
        for (std::size_t i = 0; i < f.weights.size(); ++i) {
            os << (i ? "," : "") << "(";
            for (std::size_t c = 0; c < f.weights[i].size(); ++c)
                os << (c ? " " : "") << f.weights[i][c];
            os << ")";
        }
        os << ";u=(";
        for (std::size_t c = 0; c < f.shift.size(); ++c) os << (c ? " " : "") << f.shift[c];
        os << ");x=(";
        for (std::size_t i = 0; i < inst.scene.point[k].size(); ++i) {
            auto z = inst.scene.point[k][i];
            os << (i ? " " : "") << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
        }
        os << ")";
    }
    os << "];charge=[";
    for (std::size_t k = 0; k < inst.charge.factor_count(); ++k)
        os << (k ? "," : "") << complex_to_string(inst.charge.coeff(k));
    os << "];phi=" << inst.charge.phase().radians;
    return os.str();
}

struct CheckOutcome {
    FlowTrace::Status status = FlowTrace::Status::MaxSteps;
    double floor = 0.0;
    double distance = 0.0;
    bool limit_resolved = false;
    bool agree = false;
    std::string detail;
};

inline CheckOutcome check_instance(const Instance& inst, const Verdict& verdict, double tol) {
    CheckOutcome out;
    GroupDirection sigma0(inst.scene.rank, 0.0);
    auto solved = solve_critical(inst.scene, inst.charge, sigma0, tol);
    out.status = solved.trace.status;
    out.floor = solved.residual_floor;
    switch (verdict.cls) {
        case StabilityClass::Stable:
        case StabilityClass::Polystable:
            out.agree = solved.converged && solved.residual_norm < tol;
            if (!out.agree) out.detail = "expected a critical point on the orbit";
            break;
        case StabilityClass::StrictlySemistable: {
            if (solved.converged) {
                out.detail = "solver converged on a strictly semistable orbit";
                break;
            }
            // walk into the orbit closure until the polystable stratum
            Scene cur = inst.scene;
            Verdict v = verdict;
            bool ok = false;
            for (int depth = 0; depth < 16; ++depth) {
                if (!v.witness) break;
                cur = limit_scene(cur, *v.witness);
                v = classify(cur, inst.charge);
                if (v.cls == StabilityClass::Stable || v.cls == StabilityClass::Polystable) {
                    auto re = solve_critical(cur, inst.charge, GroupDirection(cur.rank, 0.0), tol);
                    ok = re.converged;
                    break;
                }
                if (v.cls == StabilityClass::Unstable) break;
            }
            out.limit_resolved = ok;
            out.agree = ok;
            if (!ok) out.detail = "limit scene re-solve failed to converge";
            break;
        }
        case StabilityClass::Unstable: {
            out.distance = polytope_distance(inst.scene, inst.charge);
            bool floor_ok = std::abs(out.floor - out.distance) < 1e-4;
            bool status_ok = out.status == FlowTrace::Status::Diverging;
            out.agree = floor_ok && status_ok;
            if (!status_ok)
                out.detail = "expected a diverging solve";
            else if (!floor_ok)
                out.detail = "residual floor missed dist(a,Q)";
            break;
        }
    }
    return out;
}

// Shrinks a disagreeing instance: drop factors, then drop coordinates, while
// the disagreement persists.
inline Instance minimize_disagreement(const Instance& start, double tol) {
    auto disagrees = [&](const Instance& inst) {
        try {
            Verdict v = classify(inst.scene, inst.charge);
            return !check_instance(inst, v, tol).agree;
        } catch (const std::exception&) {
            return false;  // shrink must preserve the failure, not invent new ones
        }
    };
    Instance cur = start;
    bool changed = true;
    while (changed) {
        changed = false;
        if (cur.scene.factor_count() > 1) {
            for (std::size_t k = 0; k < cur.scene.factor_count(); ++k) {
                Instance cand = cur;
                cand.scene.factors.erase(cand.scene.factors.begin() + static_cast<long>(k));
                cand.scene.point.erase(cand.scene.point.begin() + static_cast<long>(k));
                std::vector<CRat> cc = cand.charge.coefficients();
                cc.erase(cc.begin() + static_cast<long>(k));
                try {
                    cand.scene = Scene(cur.scene.rank, cand.scene.factors, cand.scene.point);
                    cand.charge = CentralCharge(std::move(cc), cur.charge.phase());
                } catch (const std::exception&) {
                    continue;
                }
                if (disagrees(cand)) {
                    cur = std::move(cand);
                    changed = true;
                    break;
                }
            }
        }
        if (changed) continue;
        for (std::size_t k = 0; k < cur.scene.factor_count() && !changed; ++k) {
            if (cur.scene.supports[k].size() <= 1) continue;
            for (std::size_t i : cur.scene.supports[k]) {
                Instance cand = cur;
                cand.scene.point[k][i] = {0.0, 0.0};
                try {
                    cand.scene.rebuild_supports();
                } catch (const std::exception&) {
                    continue;
                }
                if (disagrees(cand)) {
                    cur = std::move(cand);
                    changed = true;
                    break;
                }
            }
        }
    }
    return cur;
}

}  // namespace detail

// Runs the finite-dimensional correspondence test on seeded instances: the
// exact classification must match the numeric solver outcome case by case.
inline VerificationReport kempf_ness_verify(const InstanceSpec& spec, double tol = 1e-8,
                                            unsigned threads = 0) {
    spec.validate();
    VerificationReport report;
    report.spec = spec;
    report.tol = tol;
    report.rows.resize(static_cast<std::size_t>(spec.count));
    if (spec.count == 0) return report;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.count));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= spec.count) return;
            VerificationRow row;
            row.index = i;
            Instance inst = generate_scene(spec, i);
            Verdict verdict = classify(inst.scene, inst.charge);
            row.verdict = verdict.cls;
            auto outcome = detail::check_instance(inst, verdict, tol);
            row.solver_status = outcome.status;
            row.residual_floor = outcome.floor;
            row.distance = outcome.distance;
            row.limit_resolved = outcome.limit_resolved;
            row.agree = outcome.agree;
            row.detail = outcome.detail;
            if (!row.agree)
                row.minimized = detail::describe_instance(detail::minimize_disagreement(inst, tol));
            report.rows[static_cast<std::size_t>(i)] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (const auto& row : report.rows) (row.agree ? report.agreements : report.disagreements)++;
    return report;
}

// Stability margin of an arbitrary real direction (floating route).
inline double float_margin_of_direction(const Scene& scene, const CentralCharge& charge,
                                        const GroupDirection& v) {
    double total = 0.0;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        const auto& w = scene.factors[k].weights;
        double m = pairing(w[scene.supports[k][0]], v);
        for (std::size_t i : scene.supports[k]) m = std::min(m, pairing(w[i], v));
        double lin = 0.0;
        for (std::size_t c = 0; c < scene.rank; ++c) lin += to_double(scene.factors[k].shift[c]) * v[c];
        total += charge.r(k) * (lin - m);
    }
    return total;
}

struct SweepStep {
    int j = 0;
    StabilityClass cls = StabilityClass::Unstable;
    double margin = 0.0;
    bool mixed = false;  // some interpolated r_k went negative; oracle route used
};

struct WallCrossing {
    int j_lo = 0, j_hi = 0;
    StabilityClass from = StabilityClass::Unstable, to = StabilityClass::Unstable;
};

struct SweepReport {
    std::vector<SweepStep> steps;
    std::vector<WallCrossing> walls;
};

// Classifies along the segment base + (j/steps) * direction in charge space;
// verdict changes are bracketed to 1/steps resolution.
inline SweepReport charge_sweep(const Scene& scene, const CentralCharge& base,
                                const CentralCharge& direction, int steps) {
    if (steps < 1) throw precondition_error("charge_sweep: steps must be >= 1");
    if (base.factor_count() != direction.factor_count())
        throw precondition_error("charge_sweep: coefficient counts differ");
    if (std::abs(base.phase().radians - direction.phase().radians) > 0)
        throw precondition_error("charge_sweep: phases must agree along the sweep");
    SweepReport rep;
    for (int j = 0; j <= steps; ++j) {
        Rat t(j, steps);
        std::vector<CRat> coeffs;
        for (std::size_t k = 0; k < base.factor_count(); ++k)
            coeffs.push_back(base.coeff(k) + t * direction.coeff(k));
        SweepStep step;
        step.j = j;
        CentralCharge charge(std::move(coeffs), base.phase());
        auto mw = margin_weights(charge);
        bool mixed = false;
        for (const auto& q : mw.rho) mixed = mixed || q < 0;
        step.mixed = mixed;
        ClassifyOptions opts;
        opts.allow_mixed = true;
        Verdict v = classify(scene, charge, opts);
        step.cls = v.cls;
        step.margin = v.margin;
        rep.steps.push_back(step);
        if (j > 0 && rep.steps[static_cast<std::size_t>(j) - 1].cls != step.cls)
            rep.walls.push_back({j - 1, j, rep.steps[static_cast<std::size_t>(j) - 1].cls, step.cls});
    }
    return rep;
}

}  // namespace zstab
