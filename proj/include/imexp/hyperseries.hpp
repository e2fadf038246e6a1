#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "imexp/matspecial.hpp"

namespace imexp {

struct SeriesControl {
    double tol = 1e-12;
    int max_terms = 500;
    int stall_window = 5;
};

struct EvalResult {
    CMatrix value;
    int terms_used = 0;
    double est_error = 0.0;
};

/// The parameter tuple (A, B; E_1..E_p; F_1..F_q) behind every series here.
struct ParamSet {
    std::optional<CMatrix> A;
    std::optional<CMatrix> B;
    std::vector<CMatrix> numerators;
    std::vector<CMatrix> denominators;

    int dim() const {
        int r = 0;
        auto take = [&r](const CMatrix& m) {
            if (r == 0) r = m.dim();
            if (m.dim() != r) throw ShapeError("ParamSet matrices must share one dimension");
        };
        if (A) take(*A);
        if (B) take(*B);
        for (const auto& m : numerators) take(m);
        for (const auto& m : denominators) take(m);
        if (r == 0) throw ShapeError("empty ParamSet has no dimension");
        return r;
    }
};

namespace detail {

/// Per-term weight matrix in front of the Pochhammer products.
enum class CoeffKind {
    unit,          // ordinary pFq
    reg_lower,     // Γ^{-1}(mA+B)·γ(mA+B, x)
    reg_upper,     // Γ^{-1}(mA+B)·Γ(mA+B, x)
    rec_gamma,     // Γ^{-1}(mA+B)
    gamma_weight,  // x^{mA+B}·e^{-x}·Γ^{-1}(mA+B), for the t^{B-I}e^{-t}·pRq(v t^A) kernels
};

/// Matrix with a factored-out log magnitude, so m!-scale Pochhammer growth
/// never overflows.
struct ScaledMatrix {
    CMatrix m;
    double ln_scale = 0.0;

    void normalize() {
        const double s = m.max_abs();
        if (s > 0.0 && (s > 1e100 || s < 1e-100)) {
            m *= cxd{1.0 / s, 0.0};
            ln_scale += std::log(s);
        }
    }
};

inline void require_denominator_margins(std::span<const CMatrix> dens, int max_terms) {
    for (const CMatrix& f : dens)
        if (shift_invertibility_margin(f, max_terms) <= 1e-8)
            throw Pole("denominator parameter F + kI is (nearly) singular for some k >= 0");
}

/// Produces the terms of
///   coeff(m) · (E_1)_m ⋯ (E_p)_m · (F_1)_m^{-1} ⋯ (F_q)_m^{-1} · Z^m / m!
/// in the written order, with per-factor scale tracking.
class HyperTermStream {
public:
    HyperTermStream(CoeffKind kind, const CMatrix* a, const CMatrix* b, double x,
                    std::span<const CMatrix> nums, std::span<const CMatrix> dens, cxd z_scalar,
                    const CMatrix* z_matrix, int r)
        : kind_(kind), a_(a), b_(b), x_(x), z_(z_scalar), r_(r) {
        if (kind_ != CoeffKind::unit && (a_ == nullptr || b_ == nullptr))
            throw ShapeError("series coefficient requires both A and B");
        for (const CMatrix& e : nums) nums_.push_back({e, {CMatrix::identity(r), 0.0}});
        for (const CMatrix& f : dens) dens_.push_back({f, {CMatrix::identity(r), 0.0}});
        if (z_matrix) zmat_ = Factor{*z_matrix, {CMatrix::identity(r), 0.0}};
        switch (kind_) {
            case CoeffKind::unit: break;
            case CoeffKind::reg_lower: coeff_fn_ = sf_reg_lower_gamma(x_); break;
            case CoeffKind::reg_upper: coeff_fn_ = sf_reg_upper_gamma(x_); break;
            case CoeffKind::rec_gamma: coeff_fn_ = sf_rgamma(); break;
            case CoeffKind::gamma_weight: coeff_fn_ = sf_gamma_weight(x_); break;
        }
        // A commuting diagonalizable (A,B) pair shares one eigenbasis, so the
        // per-term coefficient lift reduces to r scalar evaluations.  All
        // coefficient kinds here are entire, so no singularity screening is
        // lost on this path.
        if (kind_ != CoeffKind::unit) joint_ = try_joint_diagonalize(*a_, *b_);
    }

    int index() const { return m_; }

    CMatrix next() {
        CMatrix t = coefficient();
        double ln = zln_ - lnfact_;
        for (const auto& f : nums_) {
            t = t * f.acc.m;
            ln += f.acc.ln_scale;
        }
        for (const auto& f : dens_) {
            t = solve_right(t, f.acc.m);
            ln -= f.acc.ln_scale;
        }
        if (zmat_) {
            t = t * zmat_->acc.m;
            ln += zmat_->acc.ln_scale;
        } else {
            t *= zpow_;
        }
        if (ln != 0.0) t *= cxd{std::exp(ln), 0.0};
        advance();
        return t;
    }

private:
    struct Factor {
        CMatrix base;
        ScaledMatrix acc;  // (base)_m, scaled
    };

    CMatrix coefficient() const {
        if (kind_ == CoeffKind::unit) return CMatrix::identity(r_);
        const double md = static_cast<double>(m_);
        if (joint_) {
            CMatrix d(r_);
            for (int i = 0; i < r_; ++i)
                d(i, i) = coeff_fn_.value(md * joint_->alpha[static_cast<std::size_t>(i)] +
                                          joint_->beta[static_cast<std::size_t>(i)]);
            return joint_->v * d * joint_->vinv;
        }
        const CMatrix arg = (*a_) * cxd{md, 0.0} + (*b_);
        return apply_scalar_function(arg, coeff_fn_);
    }

    void advance() {
        const double md = static_cast<double>(m_);
        for (auto& f : nums_) {
            f.acc.m = f.acc.m * (f.base + cxd{md, 0.0});
            f.acc.normalize();
        }
        for (auto& f : dens_) {
            f.acc.m = f.acc.m * (f.base + cxd{md, 0.0});
            f.acc.normalize();
        }
        if (zmat_) {
            zmat_->acc.m = zmat_->acc.m * zmat_->base;
            const double s = zmat_->acc.m.max_abs();
            if (s > 0.0 && (s > 1e100 || s < 1e-100)) {
                zmat_->acc.m *= cxd{1.0 / s, 0.0};
                zmat_->acc.ln_scale += std::log(s);
            }
        } else {
            zpow_ *= z_;
            const double s = std::abs(zpow_);
            if (s > 0.0 && (s > 1e100 || s < 1e-100)) {
                zpow_ /= s;
                zln_ += std::log(s);
            }
        }
        lnfact_ += std::log(md + 1.0);
        ++m_;
    }

    CoeffKind kind_;
    const CMatrix* a_;
    const CMatrix* b_;
    double x_;
    cxd z_;
    int r_;
    ScalarFn coeff_fn_;
    std::optional<JointEigenbasis> joint_;
    std::vector<Factor> nums_;
    std::vector<Factor> dens_;
    std::optional<Factor> zmat_;
    cxd zpow_{1.0, 0.0};
    double zln_ = 0.0;
    double lnfact_ = 0.0;
    int m_ = 0;
};

/// Sum the stream until `stall_window` consecutive terms fall below
/// tol·(1+‖sum‖).  Terms that are still rising never count toward the stall,
/// and `min_terms_before_stall` lets kernel callers skip past a known hump.
inline EvalResult hyper_sum(CoeffKind kind, const CMatrix* a, const CMatrix* b, double x,
                            std::span<const CMatrix> nums, std::span<const CMatrix> dens,
                            cxd z_scalar, const CMatrix* z_matrix, int r,
                            const SeriesControl& ctrl, int min_terms_before_stall = 0) {
    if (ctrl.tol <= 0.0 || ctrl.stall_window < 1 || ctrl.max_terms < 1)
        throw DomainError("invalid SeriesControl");
    HyperTermStream stream(kind, a, b, x, nums, dens, z_scalar, z_matrix, r);
    CMatrix sum(r);
    int stall = 0;
    double window_max = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m < ctrl.max_terms; ++m) {
        const CMatrix term = stream.next();
        if (!term.all_finite())
            throw ConvergenceFailure("series term overflowed at m=" + std::to_string(m));
        sum += term;
        const double tn = term.frobenius_norm();
        if (m >= min_terms_before_stall && tn <= ctrl.tol * (1.0 + sum.frobenius_norm()) &&
            tn <= 4.0 * prev) {
            window_max = std::max(window_max, tn);
            if (++stall >= ctrl.stall_window) {
                EvalResult out;
                out.value = sum;
                out.terms_used = m + 1;
                out.est_error = window_max;
                return out;
            }
        } else {
            stall = 0;
            window_max = 0.0;
        }
        prev = tn;
    }
    throw ConvergenceFailure("series did not settle within the term cap");
}

}  // namespace detail

/// Generalized hypergeometric matrix series
///   pFq(E_1..E_p; F_1..F_q; z) = Σ_m (E_1)_m⋯(E_p)_m (F_1)_m^{-1}⋯(F_q)_m^{-1} z^m/m!.
/// Operational domain: p ≤ q everywhere, p = q+1 inside |z| < 1.
inline EvalResult pfq(const ParamSet& params, cxd z, const SeriesControl& ctrl = {}) {
    const int p = static_cast<int>(params.numerators.size());
    const int q = static_cast<int>(params.denominators.size());
    const int r = params.dim();
    if (z != cxd{0.0, 0.0}) {
        if (p > q + 1) throw DivergentSeries("pFq with p > q+1 diverges for z != 0");
        if (p == q + 1 && std::abs(z) >= 1.0)
            throw DivergentSeries("pFq with p = q+1 requires |z| < 1");
    }
    detail::require_denominator_margins(params.denominators, ctrl.max_terms);
    return detail::hyper_sum(detail::CoeffKind::unit, nullptr, nullptr, 0.0, params.numerators,
                             params.denominators, z, nullptr, r, ctrl);
}

/// pRq(A,B;v) = Σ_m Γ^{-1}(mA+B)(E_1)_m⋯(F_q)_m^{-1} v^m/m!.  No convergence
/// domain is asserted; truncation is monitored and failure reported instead.
inline EvalResult prq(const ParamSet& params, cxd v, const SeriesControl& ctrl = {}) {
    if (!params.A || !params.B) throw ShapeError("prq requires both A and B");
    const int r = params.dim();
    detail::require_denominator_margins(params.denominators, ctrl.max_terms);
    return detail::hyper_sum(detail::CoeffKind::rec_gamma, &*params.A, &*params.B, 0.0,
                             params.numerators, params.denominators, v, nullptr, r, ctrl);
}

/// pRq at a matrix argument Z (arising as v·t^A inside integral kernels).
inline EvalResult prq_matrix_arg(const ParamSet& params, const CMatrix& z,
                                 const SeriesControl& ctrl = {}) {
    if (!params.A || !params.B) throw ShapeError("prq requires both A and B");
    const int r = params.dim();
    if (z.dim() != r) throw ShapeError("argument dimension mismatch");
    detail::require_denominator_margins(params.denominators, ctrl.max_terms);
    return detail::hyper_sum(detail::CoeffKind::rec_gamma, &*params.A, &*params.B, 0.0,
                             params.numerators, params.denominators, cxd{0.0, 0.0}, &z, r, ctrl);
}

/// ₀F₁(−; A; z) = Σ_m (A)_m^{-1} z^m/m!.
inline EvalResult zero_f_one(const CMatrix& a, cxd z, const SeriesControl& ctrl = {}) {
    ParamSet p;
    p.denominators = {a};
    return pfq(p, z, ctrl);
}

namespace detail {

inline EvalResult incomplete_gauss(bool lower, const CMatrix& e, const CMatrix& f,
                                   const CMatrix& g, double x, cxd z, const SeriesControl& ctrl) {
    if (!(x > 0.0)) throw DomainError("incomplete Gauss series needs x > 0");
    if (std::abs(z) >= 1.0 && z != cxd{0.0, 0.0})
        throw DivergentSeries("incomplete Gauss series requires |z| < 1");
    const int r = e.dim();
    if (f.dim() != r || g.dim() != r) throw ShapeError("parameter dimensions differ");
    const std::vector<CMatrix> dens = {g};
    require_denominator_margins(dens, ctrl.max_terms);
    // (E;x)_n = P(E+nI, x)·(E)_n and [E;x]_n = Q(E+nI, x)·(E)_n, so this is
    // the incomplete-coefficient engine with the pair (A,B) = (I, E).
    const CMatrix ident = CMatrix::identity(r);
    const std::vector<CMatrix> nums = {e, f};
    return hyper_sum(lower ? CoeffKind::reg_lower : CoeffKind::reg_upper, &ident, &e, x, nums,
                     dens, z, nullptr, r, ctrl);
}

}  // namespace detail

/// ₂γ₁[(E;x), F; G; z] = Σ_n (E;x)_n (F)_n (G)_n^{-1} z^n/n!.
inline EvalResult incomplete_gauss_lower(const CMatrix& e, const CMatrix& f, const CMatrix& g,
                                         double x, cxd z, const SeriesControl& ctrl = {}) {
    return detail::incomplete_gauss(true, e, f, g, x, z, ctrl);
}

/// ₂Γ₁[[E;x], F; G; z] = Σ_n [E;x]_n (F)_n (G)_n^{-1} z^n/n!.
inline EvalResult incomplete_gauss_upper(const CMatrix& e, const CMatrix& f, const CMatrix& g,
                                         double x, cxd z, const SeriesControl& ctrl = {}) {
    return detail::incomplete_gauss(false, e, f, g, x, z, ctrl);
}

}  // namespace imexp
