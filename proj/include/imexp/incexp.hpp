#pragma once

#include <utility>

#include "imexp/hyperseries.hpp"
#include "imexp/quad.hpp"

namespace imexp {

enum class Engine { series, quadrature };

/// Scalar/parameter bundle for the incomplete exponential families; mirrors
/// what the CLI accepts.
struct IncExpArgs {
    double x = 1.0;   // incompleteness split point
    cxd t{0.0, 0.0};  // series argument (t in the two-list families, v/w beyond)
    ParamSet params;
    int k = 1;              // parameter-array multiplicity in the fractional integrals
    cxd lambda{0.0, 0.0};   // scale in the fractional integrals
    int n = 0;              // derivative order
};

namespace detail {

inline void require_e_preconditions(const CMatrix& a) {
    if (!is_positive_stable(a)) throw DomainError("leading parameter must be positive stable");
    if (shift_invertibility_margin(a, 500) <= 1e-8)
        throw Pole("leading parameter has a nonpositive-integer eigenvalue shift");
}

inline double min_re_spectrum(const CMatrix& m) {
    double lo = std::numeric_limits<double>::infinity();
    for (const cxd& ev : eigenvalues(m)) lo = std::min(lo, ev.real());
    return lo;
}

/// Split the §4 shape (A, E_2..E_p)/(A, F_2..F_q); the shared leading
/// parameter is required, not inferred.
inline std::pair<CMatrix, ParamSet> split_shared_leading(const ParamSet& p) {
    if (p.numerators.empty() || p.denominators.empty())
        throw ShapeError("expected the shared-leading-parameter shape (A,E..)/(A,F..)");
    const CMatrix& lead = p.numerators.front();
    const CMatrix& dlead = p.denominators.front();
    if (lead.dim() != dlead.dim() ||
        (lead - dlead).max_abs() > 1e-12 * (1.0 + lead.max_abs()))
        throw ShapeError("leading numerator and denominator parameters differ");
    ParamSet rest;
    rest.numerators.assign(p.numerators.begin() + 1, p.numerators.end());
    rest.denominators.assign(p.denominators.begin() + 1, p.denominators.end());
    return {lead, rest};
}

inline void require_upper_domain(std::size_t p, std::size_t q, cxd z) {
    if (z == cxd{0.0, 0.0}) return;
    if (p > q + 1) throw DivergentSeries("series with p > q+1 diverges for nonzero argument");
    // |z| = 1 is admitted: the balanced-plus-one series converges there for
    // spectra with enough margin, and truncation monitoring reports failure
    // otherwise.
    if (p == q + 1 && std::abs(z) > 1.0)
        throw DivergentSeries("series with p = q+1 requires argument modulus <= 1");
}

}  // namespace detail

// ---- two-parameter-free family: e((x,t);A) and E((x,t);A) -----------------

/// e((x,t);A) = Σ_m Γ^{-1}(A+mI)·γ(A+mI,x)·t^m/m!.
inline EvalResult e_lower(double x, cxd t, const CMatrix& a, const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("e_lower requires x > 0");
    detail::require_e_preconditions(a);
    const CMatrix ident = CMatrix::identity(a.dim());
    return detail::hyper_sum(detail::CoeffKind::reg_lower, &ident, &a, x, {}, {}, t, nullptr,
                             a.dim(), ctrl);
}

/// E((x,t);A) = Σ_m Γ^{-1}(A+mI)·Γ(A+mI,x)·t^m/m!.
inline EvalResult e_upper(double x, cxd t, const CMatrix& a, const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("e_upper requires x > 0");
    detail::require_e_preconditions(a);
    const CMatrix ident = CMatrix::identity(a.dim());
    return detail::hyper_sum(detail::CoeffKind::reg_upper, &ident, &a, x, {}, {}, t, nullptr,
                             a.dim(), ctrl);
}

namespace detail {

inline MatrixIntegrand e_integrand(cxd t, const CMatrix& a, const SeriesControl& inner) {
    return [t, a, inner](double v) {
        if (v > 800.0 + 4.0 * std::abs(t)) return CMatrix(a.dim());  // e^{-v} has underflowed
        return matrix_power_real_base(v, a - CMatrix::identity(a.dim())) *
               cxd{std::exp(-v), 0.0} * zero_f_one(a, v * t, inner).value;
    };
}

}  // namespace detail

/// Integral engine: Γ^{-1}(A)·∫₀ˣ v^{A−I} e^{−v} ₀F₁(−;A;vt) dv.
inline CMatrix e_lower_quad(double x, cxd t, const CMatrix& a, const QuadratureControl& q = {},
                            const SeriesControl& inner = {1e-13, 2000, 5}) {
    if (!(x > 0.0)) throw DomainError("e_lower_quad requires x > 0");
    detail::require_e_preconditions(a);
    const auto f = detail::e_integrand(t, a, inner);
    const CMatrix integral = integrate_left_algebraic_ex(f, x, detail::min_re_spectrum(a), q).value;
    return gamma_matrix_inverse(a) * integral;
}

/// Integral engine: Γ^{-1}(A)·∫ₓ^∞ v^{A−I} e^{−v} ₀F₁(−;A;vt) dv.
inline CMatrix e_upper_quad(double x, cxd t, const CMatrix& a, const QuadratureControl& q = {},
                            const SeriesControl& inner = {1e-13, 2000, 5}) {
    if (!(x > 0.0)) throw DomainError("e_upper_quad requires x > 0");
    detail::require_e_preconditions(a);
    const auto f = detail::e_integrand(t, a, inner);
    return gamma_matrix_inverse(a) * integrate_semi_infinite(f, x, q);
}

/// Bessel-kernel integral forms:
///   t^{−A/2}·∫ v^{A/2} e^{−v} I_A(2√(vt)) dv  (modified), and the J_A form
/// reached at argument −t.  `lower` picks [0,x], otherwise [x,∞).
inline CMatrix e_bessel_form(double x, double t, const CMatrix& a, bool modified, bool lower,
                             const QuadratureControl& q = {}) {
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("e_bessel_form requires x > 0 and t > 0");
    const int r = a.dim();
    auto f = [t, a, modified, r](double v) {
        if (v > 820.0 + 4.0 * t) return CMatrix(r);
        const cxd z = 2.0 * std::sqrt(v * t);
        const CMatrix bess = modified ? apply_scalar_function(a, sf_bessel_i_of_order(z))
                                      : apply_scalar_function(a, sf_bessel_j_of_order(z));
        return matrix_power_real_base(v, a * cxd{0.5, 0.0}) * cxd{std::exp(-v), 0.0} * bess;
    };
    const double min_re = 1.0 + 0.5 * detail::min_re_spectrum(a);  // exponent A/2 = (A/2+I)−I
    const CMatrix integral = lower
                                 ? integrate_left_algebraic_ex(f, x, min_re, q).value
                                 : integrate_semi_infinite(f, x, q);
    return matrix_power_real_base(t, a * cxd{-0.5, 0.0}) * integral;
}

// ---- shared-leading-parameter family: pe_q and pE_q -----------------------

/// pe_q[(x;t) | (A,E_2..E_p)/(A,F_2..F_q)]
///   = Σ_m Γ^{-1}(A+mI)γ(A+mI,x)·(E_2)_m⋯(F_q)_m^{-1}·t^m/m!.
inline EvalResult pe_q(double x, cxd t, const ParamSet& params, const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("pe_q requires x > 0");
    const auto [lead, rest] = detail::split_shared_leading(params);
    detail::require_e_preconditions(lead);
    detail::require_denominator_margins(rest.denominators, ctrl.max_terms);
    const CMatrix ident = CMatrix::identity(lead.dim());
    return detail::hyper_sum(detail::CoeffKind::reg_lower, &ident, &lead, x, rest.numerators,
                             rest.denominators, t, nullptr, lead.dim(), ctrl);
}

inline EvalResult pE_q(double x, cxd t, const ParamSet& params, const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("pE_q requires x > 0");
    const auto [lead, rest] = detail::split_shared_leading(params);
    detail::require_e_preconditions(lead);
    detail::require_denominator_margins(rest.denominators, ctrl.max_terms);
    detail::require_upper_domain(params.numerators.size(), params.denominators.size(), t);
    const CMatrix ident = CMatrix::identity(lead.dim());
    return detail::hyper_sum(detail::CoeffKind::reg_upper, &ident, &lead, x, rest.numerators,
                             rest.denominators, t, nullptr, lead.dim(), ctrl);
}

namespace detail {

inline MatrixIntegrand pe_integrand(cxd t, const CMatrix& lead, const ParamSet& rest,
                                    const SeriesControl& inner) {
    ParamSet innerp = rest;
    innerp.denominators.insert(innerp.denominators.begin(), lead);
    return [t, lead, innerp, inner](double v) {
        const double guard = 800.0 / std::max(0.1, 1.0 - std::min(std::abs(t), 1.0));
        if (v > guard) return CMatrix(lead.dim());
        return matrix_power_real_base(v, lead - CMatrix::identity(lead.dim())) *
               cxd{std::exp(-v), 0.0} * pfq(innerp, v * t, inner).value;
    };
}

}  // namespace detail

/// Γ^{-1}(A)·∫₀ˣ v^{A−I} e^{−v} · p−1Fq(E_2..E_p; A,F_2..F_q; vt) dv.
inline CMatrix pe_q_quad(double x, cxd t, const ParamSet& params, const QuadratureControl& q = {},
                         const SeriesControl& inner = {1e-13, 2000, 5}) {
    if (!(x > 0.0)) throw DomainError("pe_q_quad requires x > 0");
    const auto [lead, rest] = detail::split_shared_leading(params);
    detail::require_e_preconditions(lead);
    const auto f = detail::pe_integrand(t, lead, rest, inner);
    const CMatrix integral =
        integrate_left_algebraic_ex(f, x, detail::min_re_spectrum(lead), q).value;
    return gamma_matrix_inverse(lead) * integral;
}

/// Γ^{-1}(A)·∫ₓ^∞ v^{A−I} e^{−v} · p−1Fq(E_2..E_p; A,F_2..F_q; vt) dv.
inline CMatrix pE_q_quad(double x, cxd t, const ParamSet& params, const QuadratureControl& q = {},
                         const SeriesControl& inner = {1e-13, 2000, 5}) {
    if (!(x > 0.0)) throw DomainError("pE_q_quad requires x > 0");
    const auto [lead, rest] = detail::split_shared_leading(params);
    detail::require_e_preconditions(lead);
    const auto f = detail::pe_integrand(t, lead, rest, inner);
    return gamma_matrix_inverse(lead) * integrate_semi_infinite(f, x, q);
}

/// Full-line case of the same kernel: reproduces p−1Fq−1(E_2..; F_2..; t).
inline CMatrix pfq_gamma_integral_quad(cxd t, const ParamSet& params,
                                       const QuadratureControl& q = {},
                                       const SeriesControl& inner = {1e-13, 2000, 5}) {
    const auto [lead, rest] = detail::split_shared_leading(params);
    detail::require_e_preconditions(lead);
    const auto f = detail::pe_integrand(t, lead, rest, inner);
    const CMatrix head = integrate_left_algebraic_ex(f, 1.0, detail::min_re_spectrum(lead), q).value;
    const CMatrix tail = integrate_semi_infinite(f, 1.0, q);
    return gamma_matrix_inverse(lead) * (head + tail);
}

// ---- generalized family: gen_pe_q(x, A, B; v) and gen_pE_q(x, A, B; v) ----

/// Σ_m Γ^{-1}(mA+B)γ(mA+B,x)·(E_1)_m⋯(F_q)_m^{-1}·v^m/m!.  Entire in v for
/// positive stable A; truncation is monitored rather than a domain asserted.
inline EvalResult gen_pe_q(double x, cxd v, const ParamSet& params,
                           const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("gen_pe_q requires x > 0");
    if (!params.A || !params.B) throw ShapeError("gen_pe_q requires both A and B");
    detail::require_denominator_margins(params.denominators, ctrl.max_terms);
    return detail::hyper_sum(detail::CoeffKind::reg_lower, &*params.A, &*params.B, x,
                             params.numerators, params.denominators, v, nullptr, params.dim(),
                             ctrl);
}

/// Σ_m Γ^{-1}(mA+B)Γ(mA+B,x)·(E_1)_m⋯(F_q)_m^{-1}·v^m/m!.
inline EvalResult gen_pE_q(double x, cxd v, const ParamSet& params,
                           const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("gen_pE_q requires x > 0");
    if (!params.A || !params.B) throw ShapeError("gen_pE_q requires both A and B");
    detail::require_denominator_margins(params.denominators, ctrl.max_terms);
    detail::require_upper_domain(params.numerators.size(), params.denominators.size(), v);
    return detail::hyper_sum(detail::CoeffKind::reg_upper, &*params.A, &*params.B, x,
                             params.numerators, params.denominators, v, nullptr, params.dim(),
                             ctrl);
}

namespace detail {

/// t^{B−I}·e^{−t}·pRq(E;F | A,B; v·t^A) as a function of t, with the
/// t^{mA+B−I}e^{−t}Γ^{-1}(mA+B) factor of each term evaluated as one entire
/// scalar kernel.  Splitting t^{mA} off the coefficient loses hundreds of
/// orders of magnitude of pairing between the eigendirections once t is
/// large; the fused kernel stays bounded (its modulus peaks near 1).
/// Requires the commuting parameters the integral identity itself assumes.
inline MatrixIntegrand gen_kernel_integrand(cxd v, const ParamSet& params,
                                            const SeriesControl& inner) {
    const CMatrix a = *params.A;
    const CMatrix b = *params.B;
    const int r = a.dim();
    const double re_a = std::max(min_re_spectrum(a), 1e-3);
    const double re_b = min_re_spectrum(b);
    const std::vector<CMatrix> nums = params.numerators;
    const std::vector<CMatrix> dens = params.denominators;
    return [=](double t) {
        if (t > 700.0) return CMatrix(r);  // e^{-t} weight is zero to double precision
        const int hump = (t > re_b) ? static_cast<int>((t - re_b) / re_a) + 8 : 0;
        SeriesControl ctrl = inner;
        ctrl.max_terms = std::max(ctrl.max_terms, hump + 64);
        const EvalResult s = hyper_sum(CoeffKind::gamma_weight, &a, &b, t, nums, dens, v,
                                       nullptr, r, ctrl, hump);
        return s.value * cxd{1.0 / t, 0.0};
    };
}

}  // namespace detail

/// Integral engine for the generalized upper family:
///   ∫ₓ^∞ t^{B−I} e^{−t} · pRq(E;F | A,B; v·t^A) dt.
inline CMatrix gen_pE_q_quad(double x, cxd v, const ParamSet& params,
                             const QuadratureControl& q = {},
                             const SeriesControl& inner = {1e-13, 2500, 5}) {
    if (!(x > 0.0)) throw DomainError("gen_pE_q_quad requires x > 0");
    if (!params.A || !params.B) throw ShapeError("gen_pE_q_quad requires both A and B");
    if (!is_positive_stable(*params.B)) throw DomainError("B must be positive stable");
    const auto f = detail::gen_kernel_integrand(v, params, inner);
    // the kernel rises like t^{B-I} out of t=0; for small x, flatten the head
    // interval with t = u^2 before handing it to the error estimator
    if (x < 0.5 && detail::min_re_spectrum(*params.B) < 1.0) {
        auto head = [&f](double u) { return f(u * u) * cxd{2.0 * u, 0.0}; };
        return integrate_finite(head, std::sqrt(x), 1.0, q) + integrate_semi_infinite(f, 1.0, q);
    }
    return integrate_semi_infinite(f, x, q);
}

/// Lower mirror of the same kernel: ∫₀ˣ t^{B−I} e^{−t} · pRq(…; v·t^A) dt.
inline CMatrix gen_pe_q_quad(double x, cxd v, const ParamSet& params,
                             const QuadratureControl& q = {},
                             const SeriesControl& inner = {1e-13, 2500, 5}) {
    if (!(x > 0.0)) throw DomainError("gen_pe_q_quad requires x > 0");
    if (!params.A || !params.B) throw ShapeError("gen_pe_q_quad requires both A and B");
    if (!is_positive_stable(*params.B)) throw DomainError("B must be positive stable");
    const auto f = detail::gen_kernel_integrand(v, params, inner);
    return integrate_left_algebraic_ex(f, x, detail::min_re_spectrum(*params.B), q).value;
}

/// Which Euler-type integral representation of pRq to evaluate.
enum class EulerForm {
    gamma_kernel,  // Γ^{-1}(E_1)·∫₀^∞ t^{E_1−I}e^{−t}·p−1Rq(E_2..; F; vt) dt
    beta_kernel,   // ∫₀¹ p−1Rq−1(E_1..E_{p−1}; F_1..F_{q−1}; vt)·t^{E_p−I}(1−t)^{F_q−E_p−I} dt · B(E_p,F_q−E_p)^{-1}
};

inline CMatrix prq_euler_integral(const ParamSet& params, cxd v, EulerForm form,
                                  const QuadratureControl& q = {},
                                  const SeriesControl& inner = {1e-13, 2500, 5}) {
    if (!params.A || !params.B) throw ShapeError("prq_euler_integral requires both A and B");
    if (params.numerators.empty()) throw ShapeError("prq_euler_integral requires p >= 1");
    const int r = params.dim();
    if (form == EulerForm::gamma_kernel) {
        const CMatrix e1 = params.numerators.front();
        if (!is_positive_stable(e1)) throw DomainError("E_1 must be positive stable");
        ParamSet rest = params;
        rest.numerators.erase(rest.numerators.begin());
        auto f = [e1, rest, v, r, &inner](double t) {
            if (t > 800.0 + 4.0 * std::abs(v)) return CMatrix(r);
            return matrix_power_real_base(t, e1 - CMatrix::identity(r)) * cxd{std::exp(-t), 0.0} *
                   prq(rest, v * t, inner).value;
        };
        const double min_re = detail::min_re_spectrum(e1);
        const CMatrix head = integrate_left_algebraic_ex(f, 1.0, min_re, q).value;
        const CMatrix tail = integrate_semi_infinite(f, 1.0, q);
        return gamma_matrix_inverse(e1) * (head + tail);
    }
    // beta kernel: drops the trailing pair (E_p, F_q)
    if (params.denominators.empty()) throw ShapeError("beta-kernel form requires q >= 1");
    const CMatrix ep = params.numerators.back();
    const CMatrix fq = params.denominators.back();
    if (!commute(ep, fq))
        throw CommutativityViolation("beta-kernel form requires E_p F_q = F_q E_p");
    const CMatrix diff = fq - ep;
    if (!is_positive_stable(ep) || !is_positive_stable(fq) || !is_positive_stable(diff))
        throw DomainError("beta-kernel form requires E_p, F_q, F_q−E_p positive stable");
    ParamSet rest = params;
    rest.numerators.pop_back();
    rest.denominators.pop_back();
    const CMatrix ident = CMatrix::identity(r);
    auto f_left = [&](double t) {
        return prq(rest, v * t, inner).value * matrix_power_real_base(t, ep - ident) *
               matrix_power_real_base(1.0 - t, diff - ident);
    };
    auto f_right = [&](double w) {  // w = 1 - t
        return prq(rest, v * (1.0 - w), inner).value *
               matrix_power_real_base(1.0 - w, ep - ident) *
               matrix_power_real_base(w, diff - ident);
    };
    const CMatrix integral = integrate_two_sided_algebraic_ex(
                                 f_left, f_right, 0.0, 1.0, detail::min_re_spectrum(ep),
                                 detail::min_re_spectrum(diff), q)
                                 .value;
    return solve_right(integral, beta_matrix(ep, diff));
}

// ---- derivative formulas ---------------------------------------------------

namespace detail {

inline ParamSet shifted_params(const ParamSet& params, int n) {
    ParamSet s = params;
    const cxd nd{static_cast<double>(n), 0.0};
    s.B = *params.B + (*params.A) * nd;
    for (auto& e : s.numerators) e = e + nd;
    for (auto& f : s.denominators) f = f + nd;
    return s;
}

inline CMatrix pochhammer_postfactor(const ParamSet& params, int n, const CMatrix& value) {
    CMatrix out = value;
    for (const auto& e : params.numerators) out = out * pochhammer_matrix(e, n);
    for (const auto& f : params.denominators) out = solve_right(out, pochhammer_matrix(f, n));
    return out;
}

}  // namespace detail

/// d^n/dv^n gen_pE_q in closed form:
///   gen_pE_q[(x, A, nA+B; v) | E+nI; F+nI] · (E_1)_n⋯(E_p)_n (F_1)_n^{-1}⋯(F_q)_n^{-1}.
inline EvalResult gen_pE_q_derivative(double x, cxd v, const ParamSet& params, int n,
                                      const SeriesControl& ctrl = {}) {
    if (n < 0) throw DomainError("derivative order must be >= 0");
    if (!params.A || !params.B) throw ShapeError("gen_pE_q_derivative requires both A and B");
    if (n == 0) return gen_pE_q(x, v, params, ctrl);
    EvalResult res = gen_pE_q(x, v, detail::shifted_params(params, n), ctrl);
    res.value = detail::pochhammer_postfactor(params, n, res.value);
    return res;
}

/// Same closed form for the lower family.
inline EvalResult gen_pe_q_derivative(double x, cxd v, const ParamSet& params, int n,
                                      const SeriesControl& ctrl = {}) {
    if (n < 0) throw DomainError("derivative order must be >= 0");
    if (!params.A || !params.B) throw ShapeError("gen_pe_q_derivative requires both A and B");
    if (n == 0) return gen_pe_q(x, v, params, ctrl);
    EvalResult res = gen_pe_q(x, v, detail::shifted_params(params, n), ctrl);
    res.value = detail::pochhammer_postfactor(params, n, res.value);
    return res;
}

/// d^n/dv^n pRq = pRq[E+nI; F+nI | A, nA+B; v] · (E_1)_n⋯(F_q)_n^{-1}.
inline EvalResult prq_derivative(const ParamSet& params, cxd v, int n,
                                 const SeriesControl& ctrl = {}) {
    if (n < 0) throw DomainError("derivative order must be >= 0");
    if (!params.A || !params.B) throw ShapeError("prq_derivative requires both A and B");
    if (n == 0) return prq(params, v, ctrl);
    EvalResult res = prq(detail::shifted_params(params, n), v, ctrl);
    res.value = detail::pochhammer_postfactor(params, n, res.value);
    return res;
}

/// ∂/∂x gen_pE_q = −e^{−x}·x^{B−I}·pRq(E;F | A,B; v·x^A), evaluated through
/// the fused kernel of gen_kernel_integrand.
inline CMatrix gen_pE_q_dx(double x, cxd v, const ParamSet& params,
                           const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("gen_pE_q_dx requires x > 0");
    if (!params.A || !params.B) throw ShapeError("gen_pE_q_dx requires both A and B");
    return -detail::gen_kernel_integrand(v, params, ctrl)(x);
}

/// ∂/∂x gen_pe_q = +e^{−x}·x^{B−I}·pRq(E;F | A,B; v·x^A).
inline CMatrix gen_pe_q_dx(double x, cxd v, const ParamSet& params,
                           const SeriesControl& ctrl = {}) {
    return -gen_pE_q_dx(x, v, params, ctrl);
}

/// ∂/∂x e((x,t);A) = x^{A−I}·e^{−x}·Γ^{-1}(A)·₀F₁(−;A;tx).
inline CMatrix e_lower_dx(double x, cxd t, const CMatrix& a, const SeriesControl& ctrl = {}) {
    if (!(x > 0.0)) throw DomainError("e_lower_dx requires x > 0");
    const int r = a.dim();
    return matrix_power_real_base(x, a - CMatrix::identity(r)) * cxd{std::exp(-x), 0.0} *
           gamma_matrix_inverse(a) * zero_f_one(a, t * x, ctrl).value;
}

inline CMatrix e_upper_dx(double x, cxd t, const CMatrix& a, const SeriesControl& ctrl = {}) {
    return -e_lower_dx(x, t, a, ctrl);
}

// ---- addition / multiplication expansions ----------------------------------

/// Truncated right side of the addition formula:
///   Σ_n gen_pE_q[(x, A, nA+B; w) | E+nI; F+nI] · (E_1)_n⋯(F_q)_n^{-1} · v^n/n!.
inline CMatrix gen_pE_q_addition_sum(double x, cxd w, cxd v, const ParamSet& params,
                                     int outer_terms, const SeriesControl& ctrl = {}) {
    if (!params.A || !params.B) throw ShapeError("addition expansion requires both A and B");
    const int r = params.dim();
    CMatrix sum(r);
    cxd vn{1.0, 0.0};
    double fact = 1.0;
    for (int n = 0; n < outer_terms; ++n) {
        if (n > 0) {
            vn *= v;
            fact *= n;
        }
        const cxd scale = vn / fact;
        if (scale != cxd{0.0, 0.0}) {
            EvalResult inner = gen_pE_q(x, w, detail::shifted_params(params, n), ctrl);
            sum += detail::pochhammer_postfactor(params, n, inner.value) * scale;
        }
    }
    return sum;
}

/// Truncated right side of the multiplication formula:
///   Σ_n gen_pE_q[(x, A, nA+B; w) | E+nI; F+nI] · (E_1)_n⋯(F_q)_n^{-1} · wⁿ(v−1)ⁿ/n!.
inline CMatrix gen_pE_q_multiplication_sum(double x, cxd w, cxd v, const ParamSet& params,
                                           int outer_terms, const SeriesControl& ctrl = {}) {
    return gen_pE_q_addition_sum(x, w, w * (v - 1.0), params, outer_terms, ctrl);
}

/// The parameter array Δ(k, M) = { M/k, (M+I)/k, …, (M+(k−1)I)/k }.
inline std::vector<CMatrix> delta_array(int k, const CMatrix& m) {
    if (k < 1) throw DomainError("delta_array requires k >= 1");
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(k));
    const double inv_k = 1.0 / static_cast<double>(k);
    for (int j = 0; j < k; ++j)
        out.push_back((m + cxd{static_cast<double>(j), 0.0}) * cxd{inv_k, 0.0});
    return out;
}

}  // namespace imexp
