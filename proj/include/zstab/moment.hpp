// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zstab/charge.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace zstab {

// Value of the complex moment map at the marked point, in dual coordinates:
// pairing z_tilde with a Lie algebra direction is the Euclidean dot product.
struct MomentValue {
    std::vector<std::complex<double>> z_tilde;  // C^r
    std::vector<double> residual;               // Im(e^{-i phi} z_tilde)
    double residual_norm = 0.0;
};

struct EnergyReport {
    double value = 0.0;
    std::complex<double> complex_value;
    std::vector<double> gradient;               // equals minus the residual at exp(sigma).x
    std::vector<std::vector<double>> hessian;   // symmetric r x r
};

struct FlowTrace {
    enum class Status { Converged, MaxSteps, Diverging };
    std::vector<double> times;
    std::vector<GroupDirection> sigmas;
    std::vector<double> residual_norms;
    std::vector<double> energies;
    Status status = Status::MaxSteps;
    std::string note;
};

inline const char* to_string(FlowTrace::Status s) {
    switch (s) {
        case FlowTrace::Status::Converged: return "Converged";
        case FlowTrace::Status::MaxSteps: return "MaxSteps";
        case FlowTrace::Status::Diverging: return "Diverging";
    }
    return "?";
}

namespace detail {

// Numeric kernel for one orbit: Gibbs barycenters, energy, gradient, Hessian.
class OrbitKernel {
  public:
    OrbitKernel(const Scene& scene, const CentralCharge& charge) : scene_(scene) {
        const std::size_t r = scene.rank;
        for (std::size_t k = 0; k < scene.factor_count(); ++k) {
            Factor f;
            const auto& supp = scene.supports[k];
            f.w.resize(static_cast<Eigen::Index>(supp.size()), static_cast<Eigen::Index>(r));
            f.logm.resize(static_cast<Eigen::Index>(supp.size()));
            for (std::size_t j = 0; j < supp.size(); ++j) {
                for (std::size_t c = 0; c < r; ++c)
                    f.w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
                        static_cast<double>(scene.factors[k].weights[supp[j]][c]);
                f.logm(static_cast<Eigen::Index>(j)) = 2.0 * std::log(std::abs(scene.point[k][supp[j]]));
            }
            f.u.resize(static_cast<Eigen::Index>(r));
            for (std::size_t c = 0; c < r; ++c) f.u(static_cast<Eigen::Index>(c)) = to_double(scene.factors[k].shift[c]);
            f.r = charge.r(k);
            f.s = charge.s(k);
            f.c = charge.coeff(k).to_complex();
            factors_.push_back(std::move(f));
        }
    }

    std::size_t rank() const { return static_cast<std::size_t>(factors_.empty() ? 0 : factors_[0].u.size()); }

    struct State {
        double energy = 0.0;                       // Re(e^{-i phi} complex_energy)
        std::complex<double> complex_energy;       // with the pinned factor of i
        Eigen::VectorXd gradient;                  // = -residual
        Eigen::VectorXd residual;
        std::vector<Eigen::VectorXd> gibbs;        // per-factor masses
        std::vector<Eigen::VectorXd> barycenter;   // per-factor weighted barycenters
    };

    State eval(const Eigen::VectorXd& sigma) const {
        State st;
        const auto r = sigma.size();
        st.gradient = Eigen::VectorXd::Zero(r);
        st.residual = Eigen::VectorXd::Zero(r);
        st.complex_energy = {0.0, 0.0};
        for (const auto& f : factors_) {
            Eigen::VectorXd e = 2.0 * (f.w * sigma) + f.logm;
            double m = e.maxCoeff();
            Eigen::VectorXd p = (e.array() - m).exp();
            double z = p.sum();
            p /= z;
            double logz = m + std::log(z);
            Eigen::VectorXd b = f.w.transpose() * p;
            double lin = f.u.dot(sigma);
            st.energy += f.r * (0.5 * logz - lin);
            st.complex_energy += std::complex<double>(0.0, 1.0) * f.c * (lin - 0.5 * logz);
            st.gradient += f.r * (b - f.u);
            st.residual += f.r * (f.u - b);
            st.gibbs.push_back(std::move(p));
            st.barycenter.push_back(std::move(b));
        }
        return st;
    }

    Eigen::MatrixXd hessian(const State& st) const {
        const auto r = factors_.empty() ? 0 : factors_[0].u.size();
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(r, r);
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            const auto& f = factors_[k];
            const auto& p = st.gibbs[k];
            const auto& b = st.barycenter[k];
            Eigen::MatrixXd second = f.w.transpose() * p.asDiagonal() * f.w;
            h += 2.0 * f.r * (second - b * b.transpose());
        }
        return 0.5 * (h + h.transpose());  // symmetrise against rounding
    }

    std::vector<std::complex<double>> complex_moment(const State& st) const {
        const auto r = factors_.empty() ? 0 : factors_[0].u.size();
        std::vector<std::complex<double>> z(static_cast<std::size_t>(r), {0.0, 0.0});
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            const auto& f = factors_[k];
            for (Eigen::Index c = 0; c < r; ++c)
                z[static_cast<std::size_t>(c)] += f.c * (f.u(c) - st.barycenter[k](c));
        }
        return z;
    }

    // Re(e^{-i phi} z_tilde): the Hermitian-part coordinates.
    Eigen::VectorXd hermitian_part(const State& st) const {
        const auto r = factors_.empty() ? 0 : factors_[0].u.size();
        Eigen::VectorXd s = Eigen::VectorXd::Zero(r);
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            const auto& f = factors_[k];
            s += f.s * (f.u - st.barycenter[k]);
        }
        return s;
    }

  private:
    struct Factor {
        Eigen::MatrixXd w;     // supported weight rows
        Eigen::VectorXd logm;  // log squared moduli of supported coordinates
        Eigen::VectorXd u;
        double r = 0.0, s = 0.0;
        std::complex<double> c;
    };
    const Scene& scene_;
    std::vector<Factor> factors_;
};

// Orthonormal basis of the orthogonal complement of the stabiliser Lie
// algebra (the directions the energy genuinely depends on).
inline Eigen::MatrixXd stabiliser_complement(const Scene& scene) {
    auto basis = stabiliser_lie(scene);
    const auto r = static_cast<Eigen::Index>(scene.rank);
    if (basis.empty()) return Eigen::MatrixXd::Identity(r, r);
    Eigen::MatrixXd v(r, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t c = 0; c < scene.rank; ++c)
            v(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) = to_double(basis[j][c]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
    const auto s = static_cast<Eigen::Index>(basis.size());
    // columns s..r-1 of Q span the complement
    return q.rightCols(r - s);
}

inline Eigen::VectorXd to_eigen(const GroupDirection& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

inline GroupDirection from_eigen(const Eigen::VectorXd& v) {
    GroupDirection out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
    return out;
}

}  // namespace detail

inline MomentValue complex_moment(const Scene& scene, const CentralCharge& charge) {
    detail::OrbitKernel kernel(scene, charge);
    auto st = kernel.eval(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(scene.rank)));
    MomentValue mv;
    mv.z_tilde = kernel.complex_moment(st);
    mv.residual = detail::from_eigen(st.residual);
    mv.residual_norm = st.residual.norm();
    return mv;
}

// Exact pairing <z_tilde(x), lambda> from the dyadic coordinate moduli; the
// barycenter pairing collapses to the common level exactly whenever lambda
// fixes the point, so no rounding enters.
inline CRat moment_pairing_exact(const Scene& scene, const CentralCharge& charge,
                                 const Cocharacter& lambda) {
    CRat total;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        Rat mass = 0, weighted = 0;
        for (std::size_t i : scene.supports[k]) {
            Rat re = rat_of_double(scene.point[k][i].real());
            Rat im = rat_of_double(scene.point[k][i].imag());
            Rat m = re * re + im * im;
            mass += m;
            weighted += m * Rat(pairing(scene.factors[k].weights[i], lambda));
        }
        Rat nu = pairing(scene.factors[k].shift, lambda) - weighted / mass;
        total = total + nu * charge.coeff(k);
    }
    return total;
}

struct CompatibilityReport {
    double pairing_deviation = 0.0;   // |<z_tilde(y), lambda> - Z(y, lambda)|
    bool pairing_exact_zero = false;  // the two sides agreed in rational arithmetic
    // |arg <z_tilde, Re(e^{-i phi} z_tilde)> - phi| when the point is
    // numerically critical; absent otherwise. Zero when the moment map itself
    // vanishes (the comparison is vacuous there).
    std::optional<double> phase_deviation;
};

inline CompatibilityReport compatibility_check(const GradedPoint& g, const CentralCharge& charge,
                                               double tol = 1e-8) {
    const Scene& scene = g.scene;
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    CompatibilityReport rep;
    RatVec v(scene.rank);
    for (std::size_t c = 0; c < scene.rank; ++c) v[c] = Rat(g.lambda[c]);
    CRat lhs = moment_pairing_exact(scene, charge, g.lambda);
    CRat rhs = z_on_stabiliser(scene, charge, v);
    CRat diff = lhs - rhs;
    rep.pairing_exact_zero = diff.is_zero();
    rep.pairing_deviation = std::abs(diff.to_complex());

    detail::OrbitKernel kernel(scene, charge);
    auto st = kernel.eval(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(scene.rank)));
    if (st.residual.norm() < tol) {
        Eigen::VectorXd s = kernel.hermitian_part(st);
        double s2 = s.squaredNorm();
        if (s2 <= 1e-18) {
            rep.phase_deviation = 0.0;  // moment map vanishes; nothing to compare
        } else {
            double cross = st.residual.dot(s);
            rep.phase_deviation = std::abs(std::atan2(cross, s2));
        }
    }
    return rep;
}

struct SubsolutionReport {
    struct Row {
        std::size_t factor = 0;
        double r = 0.0;
        bool degenerate = false;  // single supported weight; the orbit is a point
        bool positive = false;
    };
    std::vector<Row> rows;
    bool positive = false;
};

inline SubsolutionReport subsolution_check(const Scene& scene, const CentralCharge& charge) {
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    SubsolutionReport rep;
    rep.positive = true;
    for (std::size_t k = 0; k < scene.factor_count(); ++k) {
        SubsolutionReport::Row row;
        row.factor = k;
        row.r = charge.r(k);
        const auto& supp = scene.supports[k];
        const auto& w = scene.factors[k].weights;
        row.degenerate = true;
        for (std::size_t j = 1; j < supp.size() && row.degenerate; ++j)
            row.degenerate = (w[supp[j]] == w[supp[0]]);
        row.positive = charge.exact_margins() ? charge.rho(k) > 0 : charge.r(k) > 0;
        if (!row.degenerate && !row.positive) rep.positive = false;
        rep.rows.push_back(row);
    }
    return rep;
}

inline EnergyReport energy(const Scene& scene, const CentralCharge& charge,
                           const GroupDirection& sigma) {
    if (sigma.size() != scene.rank) throw precondition_error("sigma length must equal rank");
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    detail::OrbitKernel kernel(scene, charge);
    auto st = kernel.eval(detail::to_eigen(sigma));
    EnergyReport rep;
    rep.value = st.energy;
    rep.complex_value = st.complex_energy;
    rep.gradient = detail::from_eigen(st.gradient);
    Eigen::MatrixXd h = kernel.hessian(st);
    rep.hessian.assign(scene.rank, std::vector<double>(scene.rank));
    for (std::size_t i = 0; i < scene.rank; ++i)
        for (std::size_t j = 0; j < scene.rank; ++j)
            rep.hessian[i][j] = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return rep;
}

struct SolveResult {
    bool converged = false;
    GroupDirection sigma_star;
    double residual_norm = 0.0;   // at the final iterate
    double residual_floor = 0.0;  // best residual norm seen
    int iterations = 0;
    FlowTrace trace;
};

// Damped Newton descent of the energy on the orthogonal complement of the
// stabiliser. Converged means the full residual fell under tol at an interior
// stationary point (small final step); escapes toward a boundary stratum keep
// taking order-one steps and are reported as Diverging once the iterate
// leaves the divergence radius with a stagnant residual floor.
inline SolveResult solve_critical(const Scene& scene, const CentralCharge& charge,
                                  const GroupDirection& sigma0, double tol = 1e-8,
                                  int max_iter = 2000) {
    if (!subsolution_check(scene, charge).positive)
        throw precondition_error("solve_critical: charge is not a subsolution on this scene");
    if (sigma0.size() != scene.rank) throw precondition_error("sigma0 length must equal rank");

    detail::OrbitKernel kernel(scene, charge);
    Eigen::MatrixXd basis = detail::stabiliser_complement(scene);  // r x d
    const double radius = 50.0 * (1.0 + static_cast<double>(weight_spread(scene)));
    const double step_tol = 1e-6;
    const double step_cap = 10.0;

    Eigen::VectorXd sigma = basis * (basis.transpose() * detail::to_eigen(sigma0));
    SolveResult out;
    out.trace.status = FlowTrace::Status::MaxSteps;
    double floor = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    int polish = 0;

    auto st = kernel.eval(sigma);
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        double rn = st.residual.norm();
        out.trace.times.push_back(static_cast<double>(it));
        out.trace.sigmas.push_back(detail::from_eigen(sigma));
        out.trace.residual_norms.push_back(rn);
        out.trace.energies.push_back(st.energy);
        if (rn < floor - 1e-12) {
            floor = rn;
            stagnant = 0;
        } else {
            ++stagnant;
        }

        // projected Newton step with Levenberg fallback
        Eigen::VectorXd g = basis.transpose() * st.gradient;
        Eigen::MatrixXd h = basis.transpose() * kernel.hessian(st) * basis;
        Eigen::VectorXd d;
        double damp = 0.0;
        for (;;) {
            Eigen::LLT<Eigen::MatrixXd> llt(h + damp * Eigen::MatrixXd::Identity(h.rows(), h.cols()));
            if (llt.info() == Eigen::Success) {
                d = -llt.solve(g);
                break;
            }
            damp = damp == 0.0 ? 1e-10 * (1.0 + h.trace()) : damp * 10.0;
            if (damp > 1e12) {
                d = -g;  // gradient fallback
                break;
            }
        }
        if (d.norm() > step_cap) d *= step_cap / d.norm();

        double slope = g.dot(d);
        double alpha = 1.0;
        Eigen::VectorXd sigma_new = sigma + basis * (alpha * d);
        auto st_new = kernel.eval(sigma_new);
        int backtracks = 0;
        while (st_new.energy > st.energy + 1e-4 * alpha * slope && backtracks < 60) {
            alpha *= 0.5;
            sigma_new = sigma + basis * (alpha * d);
            st_new = kernel.eval(sigma_new);
            ++backtracks;
        }
        double step_norm = (alpha * d).norm();
        sigma = sigma_new;
        st = st_new;
        double rn_new = st.residual.norm();

        if (rn_new < tol && step_norm < step_tol) {
            // polish a little so downstream phase checks see a sharp zero
            if (rn_new > 1e-13 && polish < 5 && step_norm > 0) {
                ++polish;
                continue;
            }
            out.converged = true;
            out.trace.status = FlowTrace::Status::Converged;
            break;
        }
        if (sigma.norm() > radius && (stagnant > 100 || rn_new < tol)) {
            out.trace.status = FlowTrace::Status::Diverging;
            break;
        }
        if (sigma.norm() > 20.0 * radius) {
            out.trace.status = FlowTrace::Status::Diverging;
            break;
        }
    }
    out.sigma_star = detail::from_eigen(sigma);
    double rn = st.residual.norm();
    out.residual_norm = rn;
    out.residual_floor = std::min(floor, rn);
    out.trace.times.push_back(static_cast<double>(out.iterations));
    out.trace.sigmas.push_back(out.sigma_star);
    out.trace.residual_norms.push_back(rn);
    out.trace.energies.push_back(st.energy);
    return out;
}

// Explicit Euler descent dsigma/dt = -grad(energy) with step halving whenever
// the energy fails to decrease or the residual norm ticks up.
inline FlowTrace z_flow(const Scene& scene, const CentralCharge& charge,
                        const GroupDirection& sigma0, double t_end, double tol = 1e-8) {
    if (sigma0.size() != scene.rank) throw precondition_error("sigma0 length must equal rank");
    if (charge.factor_count() != scene.factor_count())
        throw precondition_error("charge has wrong number of coefficients");
    detail::OrbitKernel kernel(scene, charge);
    const double radius = 50.0 * (1.0 + static_cast<double>(weight_spread(scene)));

    FlowTrace trace;
    Eigen::VectorXd sigma = detail::to_eigen(sigma0);
    auto st = kernel.eval(sigma);
    double t = 0.0, h = 0.05;
    auto record = [&](double time, const Eigen::VectorXd& s, const detail::OrbitKernel::State& state) {
        trace.times.push_back(time);
        trace.sigmas.push_back(detail::from_eigen(s));
        trace.residual_norms.push_back(state.residual.norm());
        trace.energies.push_back(state.energy);
    };
    record(t, sigma, st);
    trace.status = FlowTrace::Status::MaxSteps;
    const int max_steps = 200000;
    for (int step = 0; step < max_steps && t < t_end; ++step) {
        if (st.residual.norm() < tol) {
            trace.status = FlowTrace::Status::Converged;
            return trace;
        }
        double h_eff = std::min(h, t_end - t);
        bool accepted = false;
        while (!accepted) {
            Eigen::VectorXd cand = sigma - h_eff * st.gradient;
            auto st_cand = kernel.eval(cand);
            if (st_cand.energy < st.energy &&
                st_cand.residual.norm() <= st.residual.norm() + 1e-10) {
                t += h_eff;
                sigma = cand;
                st = st_cand;
                record(t, sigma, st);
                accepted = true;
                if (h_eff == h) h = std::min(h * 1.25, 1.0);
            } else {
                h_eff *= 0.5;
                h = h_eff;
                if (h_eff < 1e-14) {
                    trace.note = "step underflow";
                    if (st.residual.norm() < tol) trace.status = FlowTrace::Status::Converged;
                    return trace;
                }
            }
        }
        if (sigma.norm() > radius) {
            trace.status = FlowTrace::Status::Diverging;
            return trace;
        }
    }
    if (st.residual.norm() < tol) trace.status = FlowTrace::Status::Converged;
    return trace;
}

// A point is extremal when the residual lies in the stabiliser directions:
// its projection onto their orthogonal complement is negligible.
inline bool is_extremal(const Scene& scene, const CentralCharge& charge, double tol) {
    detail::OrbitKernel kernel(scene, charge);
    auto st = kernel.eval(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(scene.rank)));
    Eigen::MatrixXd basis = detail::stabiliser_complement(scene);
    return (basis.transpose() * st.residual).norm() < tol;
}

}  // namespace zstab
