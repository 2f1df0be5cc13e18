// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/graded.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace zstab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// The phase against which stability margins are measured; open interval
// (-pi, pi). Rational multiples of pi are kept exact so that quarter-turn
// phases admit exact margin arithmetic.
struct Phase {
    bool is_pi_multiple = true;
    Rat t = 0;            // phi = t * pi when is_pi_multiple
    double radians = 0.0;

    static Phase pi_multiple(const Rat& t) {
        if (t <= -1 || t >= 1) throw precondition_error("phase must lie in (-pi, pi)");
        Phase p;
        p.is_pi_multiple = true;
        p.t = t;
        p.radians = to_double(t) * kPi;
        return p;
    }
    static Phase from_radians(double phi) {
        if (!(phi > -kPi && phi < kPi)) throw precondition_error("phase must lie in (-pi, pi)");
        Phase p;
        p.is_pi_multiple = false;
        p.t = 0;
        p.radians = phi;
        return p;
    }
};

// e^{-i phi} = scale * (cos_q - i sin_q) with rational cos_q, sin_q and a
// common positive scale of 1 or 1/sqrt(2). Available for phi a multiple of
// pi/4; margins are then rational up to the positive scale, which is all the
// exact classification route needs.
struct PhaseFrame {
    bool exact = false;
    bool scale_is_inv_sqrt2 = false;
    Rat cos_q = 1, sin_q = 0;

    double scale() const { return scale_is_inv_sqrt2 ? 1.0 / std::sqrt(2.0) : 1.0; }

    static PhaseFrame of(const Phase& phase) {
        PhaseFrame f;
        if (!phase.is_pi_multiple) return f;
        const BigInt den = denominator(phase.t);
        const BigInt num = numerator(phase.t);
        if (den == 1) {  // t == 0
            f.exact = true;
            f.cos_q = 1;
            f.sin_q = 0;
        } else if (den == 2) {  // t == +-1/2
            f.exact = true;
            f.cos_q = 0;
            f.sin_q = num > 0 ? 1 : -1;
        } else if (den == 4) {  // t in {+-1/4, +-3/4}
            f.exact = true;
            f.scale_is_inv_sqrt2 = true;
            BigInt n = num < 0 ? -num : num;
            f.cos_q = (n == 1) ? 1 : -1;
            f.sin_q = num > 0 ? 1 : -1;
        }
        return f;
    }
};

// A central charge realised as a complex coefficient per linearised factor
// plus a phase. Coefficients are exact Gaussian rationals.
class CentralCharge {
  public:
    CentralCharge(std::vector<CRat> coefficients, Phase phase)
        : coeffs_(std::move(coefficients)), phase_(phase), frame_(PhaseFrame::of(phase)) {
        bool nonzero = false;
        for (const auto& c : coeffs_) nonzero = nonzero || !c.is_zero();
        if (!nonzero) throw precondition_error("central charge needs a nonzero coefficient");
        rho_.resize(coeffs_.size());
        sig_.resize(coeffs_.size());
        r_.resize(coeffs_.size());
        s_.resize(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (frame_.exact) {
                // e^{-i phi} c = scale * [(re*cos + im*sin) + i (im*cos - re*sin)]
                rho_[k] = coeffs_[k].im * frame_.cos_q - coeffs_[k].re * frame_.sin_q;
                sig_[k] = coeffs_[k].re * frame_.cos_q + coeffs_[k].im * frame_.sin_q;
                r_[k] = to_double(rho_[k]) * frame_.scale();
                s_[k] = to_double(sig_[k]) * frame_.scale();
            } else {
                const double c = std::cos(phase_.radians), s = std::sin(phase_.radians);
                const double re = to_double(coeffs_[k].re), im = to_double(coeffs_[k].im);
                r_[k] = im * c - re * s;
                s_[k] = re * c + im * s;
            }
        }
    }

    // The classical GIT charge: coefficient i on every factor, phase 0.
    static CentralCharge classical(std::size_t factor_count) {
        return CentralCharge(std::vector<CRat>(factor_count, CRat(Rat(0), Rat(1))),
                             Phase::pi_multiple(0));
    }

    std::size_t factor_count() const { return coeffs_.size(); }
    const CRat& coeff(std::size_t k) const { return coeffs_[k]; }
    const std::vector<CRat>& coefficients() const { return coeffs_; }
    const Phase& phase() const { return phase_; }
    const PhaseFrame& frame() const { return frame_; }

    // Im(e^{-i phi} c_k), Re(e^{-i phi} c_k)
    double r(std::size_t k) const { return r_[k]; }
    double s(std::size_t k) const { return s_[k]; }

    // Margins are rational up to a common positive scale iff the frame is exact.
    bool exact_margins() const { return frame_.exact; }
    bool margin_scale_is_one() const { return frame_.exact && !frame_.scale_is_inv_sqrt2; }
    const Rat& rho(std::size_t k) const { return rho_[k]; }
    const Rat& sig(std::size_t k) const { return sig_[k]; }

  private:
    std::vector<CRat> coeffs_;
    Phase phase_;
    PhaseFrame frame_;
    RatVec rho_, sig_;      // scaled exact r_k, s_k (valid iff frame_.exact)
    std::vector<double> r_, s_;
};

// Minimal pairing of lambda with the supported weights of factor k.
inline long long min_pairing(const Scene& scene, std::size_t k, const Cocharacter& lambda) {
    const auto& w = scene.factors[k].weights;
    long long m = pairing(w[scene.supports[k][0]], lambda);
    for (std::size_t i : scene.supports[k]) m = std::min(m, pairing(w[i], lambda));
    return m;
}

// Hilbert-Mumford weight of factor k: <u_k, lambda> - min pairing. With this
// sign, semistability (weight >= 0 for all lambda) matches the shift lying in
// the supported weight polytope.
inline Rat hm_weight(const Scene& scene, std::size_t k, const Cocharacter& lambda) {
    if (lambda.size() != scene.rank) throw precondition_error("cocharacter length must equal rank");
    if (k >= scene.factor_count()) throw precondition_error("factor index out of range");
    return pairing(scene.factors[k].shift, lambda) - Rat(min_pairing(scene, k, lambda));
}

// Z(y, lambda) for y the specialisation of the marked point under lambda.
inline CRat z_of_degeneration(const Scene& scene, const CentralCharge& charge,
                              const Cocharacter& lambda) {
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    CRat z;
    for (std::size_t k = 0; k < scene.factor_count(); ++k)
        z = z + hm_weight(scene, k, lambda) * charge.coeff(k);
    return z;
}

// The stability margin Im(e^{-i phi} Z(y, lambda)).
inline double margin_of_degeneration(const Scene& scene, const CentralCharge& charge,
                                     const Cocharacter& lambda) {
    double m = 0;
    for (std::size_t k = 0; k < scene.factor_count(); ++k)
        m += charge.r(k) * to_double(hm_weight(scene, k, lambda));
    return m;
}

// Margin divided by the positive frame scale; exact classification works with
// these since every stability predicate is scale invariant.
inline std::optional<Rat> scaled_margin_of_degeneration(const Scene& scene,
                                                        const CentralCharge& charge,
                                                        const Cocharacter& lambda) {
    if (!charge.exact_margins()) return std::nullopt;
    Rat m = 0;
    for (std::size_t k = 0; k < scene.factor_count(); ++k)
        m += charge.rho(k) * hm_weight(scene, k, lambda);
    return m;
}

// Common pairing value of a stabiliser direction on the supported weights of
// factor k (exact rational direction).
inline Rat common_level(const Scene& scene, std::size_t k, const RatVec& v) {
    return pairing_rat(scene.factors[k].weights[scene.supports[k][0]], v);
}

// Linear extension of Z to the stabiliser Lie algebra, exact rational route.
inline CRat z_on_stabiliser(const Scene& scene, const CentralCharge& charge, const RatVec& v) {
    if (v.size() != scene.rank) throw precondition_error("direction length must equal rank");
    if (!fixes_point(scene, v))
        throw precondition_error("direction does not lie in the stabiliser Lie algebra");
    CRat z;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        Rat nu = 0;
        for (std::size_t c = 0; c < scene.rank; ++c) nu += scene.factors[k].shift[c] * v[c];
        nu -= common_level(scene, k, v);
        z = z + nu * charge.coeff(k);
    }
    return z;
}

// Floating route for possibly irrational directions; membership in the
// stabiliser is checked to 1e-12.
inline std::complex<double> z_on_stabiliser(const Scene& scene, const CentralCharge& charge,
                                            const GroupDirection& v) {
    if (v.size() != scene.rank) throw precondition_error("direction length must equal rank");
    std::complex<double> z{0.0, 0.0};
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        const auto& w = scene.factors[k].weights;
        double level = pairing(w[scene.supports[k][0]], v);
        for (std::size_t i : scene.supports[k])
            if (std::abs(pairing(w[i], v) - level) > 1e-12)
                throw precondition_error("direction does not lie in the stabiliser Lie algebra");
        double nu = -level;
        for (std::size_t c = 0; c < scene.rank; ++c) nu += to_double(scene.factors[k].shift[c]) * v[c];
        z += charge.coeff(k).to_complex() * nu;
    }
    return z;
}

// Principal argument on the upper half plane H = {Im >= 0} minus the negative
// reals; errors off the domain, signalling that the phase-comparison
// hypothesis fails.
inline double phase_of(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) throw precondition_error("phase_of: zero argument");
    if (z.imag() < 0.0) throw precondition_error("phase_of: argument below the real axis");
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw precondition_error("phase_of: negative reals excluded");
    return std::atan2(z.imag(), z.real());
}

// Slope charge of sheaf data: rank - i * degree.
inline CRat slope_charge(long long rank, const Rat& degree) {
    if (rank < 0) throw precondition_error("slope_charge: rank must be nonnegative");
    return CRat(Rat(rank), -degree);
}

// Charge of a direct sum graded by exponents: sum of a_j Z_j.
inline CRat direct_sum_charge(const std::vector<CRat>& values,
                              const std::vector<long long>& exponents) {
    if (values.size() != exponents.size()) throw precondition_error("direct_sum_charge: length mismatch");
    CRat z;
    for (std::size_t j = 0; j < values.size(); ++j) z = z + Rat(exponents[j]) * values[j];
    return z;
}

// Charge data of the K-stability example: leading Hilbert and weight
// polynomial coefficients of a polarised scheme and a test configuration.
struct KChargeResult {
    CRat z_total;   // i a0 - a1
    CRat z_tc;      // -i b0 + b1
    Rat df_margin;  // a1 b0 - a0 b1, exact
};

inline KChargeResult k_charge(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1) {
    if (a0 <= 0) throw precondition_error("k_charge: a0 must be positive");
    KChargeResult out;
    out.z_total = CRat(-a1, a0);
    out.z_tc = CRat(b1, -b0);
    out.df_margin = a1 * b0 - a0 * b1;
    return out;
}

// A finitely tabulated candidate charge on the cocharacter lattice of a
// stabiliser, for validation against the additivity and Weyl axioms.
struct TabulatedCharge {
    std::size_t rank = 0;
    std::map<Cocharacter, CRat> table;
    std::optional<WeylAction> datum;

    TabulatedCharge(std::size_t r, std::map<Cocharacter, CRat> t,
                    std::optional<WeylAction> d = std::nullopt)
        : rank(r), table(std::move(t)), datum(std::move(d)) {
        if (table.empty()) throw precondition_error("tabulated charge: empty table");
        for (const auto& [lam, val] : table) {
            if (lam.size() != rank) throw precondition_error("tabulated charge: rank mismatch");
            Cocharacter neg(lam.size());
            for (std::size_t i = 0; i < lam.size(); ++i) neg[i] = -lam[i];
            if (!table.count(neg)) throw precondition_error("tabulated charge: box not symmetric");
        }
        Cocharacter zero(rank, 0);
        auto it = table.find(zero);
        if (it == table.end())
            table.emplace(zero, CRat());
        else if (!it->second.is_zero())
            throw precondition_error("tabulated charge: value at 0 must be 0");
    }
};

struct TabulatedValidation {
    struct AdditivityViolation {
        Cocharacter a, b;
        CRat got, expected;
    };
    struct WeylViolation {
        Cocharacter lambda, image;
        CRat value, image_value;
    };
    std::vector<AdditivityViolation> additivity_violations;
    std::vector<WeylViolation> weyl_violations;
    bool additive() const { return additivity_violations.empty(); }
    bool weyl_ok() const { return weyl_violations.empty(); }
    std::optional<std::vector<CRat>> chi;  // reconstructed complex character
    double max_residual = 0.0;
    bool residual_exactly_zero = false;
};

inline TabulatedValidation validate_tabulated(const TabulatedCharge& t) {
    TabulatedValidation rep;
    for (const auto& [a, va] : t.table) {
        for (const auto& [b, vb] : t.table) {
            Cocharacter sum(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
            auto it = t.table.find(sum);
            if (it == t.table.end()) continue;
            if (it->second != va + vb)
                rep.additivity_violations.push_back({a, b, it->second, va + vb});
        }
    }
    if (t.datum) {
        for (const auto& [lam, val] : t.table) {
            for (const auto& g : t.datum->generators()) {
                Cocharacter img = WeylAction::apply(g, lam);
                auto it = t.table.find(img);
                if (it != t.table.end() && it->second != val)
                    rep.weyl_violations.push_back({lam, img, val, it->second});
            }
        }
    }
    if (!rep.additive() || !rep.weyl_ok()) return rep;

    // Least squares reconstruction of the linear character; exact since the
    // table is exact. Normal equations: (sum lam lam^T) chi = sum psi(lam) lam.
    RatMat m(t.rank, RatVec(t.rank, Rat(0)));
    RatVec rhs_re(t.rank, Rat(0)), rhs_im(t.rank, Rat(0));
    for (const auto& [lam, val] : t.table) {
        for (std::size_t i = 0; i < t.rank; ++i) {
            for (std::size_t j = 0; j < t.rank; ++j) m[i][j] += Rat(lam[i]) * Rat(lam[j]);
            rhs_re[i] += val.re * Rat(lam[i]);
            rhs_im[i] += val.im * Rat(lam[i]);
        }
    }
    auto xre = solve_linear(m, rhs_re);
    auto xim = solve_linear(m, rhs_im);
    if (xre && xim) {
        std::vector<CRat> chi(t.rank);
        for (std::size_t i = 0; i < t.rank; ++i) chi[i] = CRat((*xre)[i], (*xim)[i]);
        Rat worst2 = 0;
        for (const auto& [lam, val] : t.table) {
            CRat pred;
            for (std::size_t i = 0; i < t.rank; ++i) pred = pred + Rat(lam[i]) * chi[i];
            CRat d = pred - val;
            Rat n2 = d.re * d.re + d.im * d.im;
            if (n2 > worst2) worst2 = n2;
        }
        rep.chi = std::move(chi);
        rep.residual_exactly_zero = (worst2 == 0);
        rep.max_residual = std::sqrt(to_double(worst2));
    }
    return rep;
}

}  // namespace zstab
