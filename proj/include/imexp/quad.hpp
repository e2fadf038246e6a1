#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "imexp/cmatrix.hpp"

namespace imexp {

struct QuadratureControl {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct QuadOutcome {
    CMatrix value;
    double error = 0.0;
    int segments = 0;
};

using MatrixIntegrand = std::function<CMatrix(double)>;

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
inline constexpr double kGK15X[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15WK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    CMatrix value;
    double err;
};

inline Segment gk15(const MatrixIntegrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    CMatrix fc = f(c);
    if (!fc.all_finite()) throw SingularEndpoint("non-finite integrand value");
    CMatrix resk = fc * cxd{kGK15WK[7], 0.0};
    CMatrix resg = fc * cxd{kGK15WG[3], 0.0};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kGK15X[j];
        CMatrix f1 = f(c - dx);
        CMatrix f2 = f(c + dx);
        if (!f1.all_finite() || !f2.all_finite())
            throw SingularEndpoint("non-finite integrand value");
        const CMatrix fsum = f1 + f2;
        resk += fsum * cxd{kGK15WK[j], 0.0};
        if (j % 2 == 1) resg += fsum * cxd{kGK15WG[(j - 1) / 2], 0.0};
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = resk * cxd{h, 0.0};
    s.err = (resk - resg).max_abs() * std::abs(h);
    return s;
}

}  // namespace detail

/// Adaptive Gauss–Kronrod on [a,b] with entrywise max-norm error control.
inline QuadOutcome integrate_finite_ex(const MatrixIntegrand& f, double a, double b,
                                       const QuadratureControl& q = {}) {
    if (!(a < b)) throw DomainError("integrate_finite requires a < b");
    std::vector<detail::Segment> segs;
    segs.push_back(detail::gk15(f, a, b));
    const double eps = 1e-200;  // guard against endless refinement of a zero integral
    for (int iter = 0; iter < q.max_subdivisions; ++iter) {
        double total_err = 0.0;
        CMatrix total = segs.front().value;
        for (std::size_t i = 1; i < segs.size(); ++i) total += segs[i].value;
        for (const auto& s : segs) total_err += s.err;
        if (total_err <= std::max({q.abs_tol, q.rel_tol * total.max_abs(), eps})) {
            // deterministic final summation, ordered by interval position
            std::sort(segs.begin(), segs.end(),
                      [](const detail::Segment& x, const detail::Segment& y) { return x.a < y.a; });
            QuadOutcome out;
            out.value = segs.front().value;
            for (std::size_t i = 1; i < segs.size(); ++i) out.value += segs[i].value;
            out.error = total_err;
            out.segments = static_cast<int>(segs.size());
            return out;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const double sa = segs[worst].a, sb = segs[worst].b, sm = 0.5 * (sa + sb);
        if (!(sa < sm && sm < sb)) {
            // interval no longer splittable in double precision
            if (segs[worst].a <= a + 1e-14 * std::abs(b - a) ||
                segs[worst].b >= b - 1e-14 * std::abs(b - a))
                throw SingularEndpoint("integrand appears non-integrable at an endpoint");
            throw QuadratureFailure("interval underflow during adaptive refinement");
        }
        detail::Segment left = detail::gk15(f, sa, sm);
        detail::Segment right = detail::gk15(f, sm, sb);
        segs[worst] = left;
        segs.push_back(right);
    }
    // cap reached; blame an endpoint when refinement has collapsed onto it
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
        if (segs[i].err > segs[worst].err) worst = i;
    const double w = segs[worst].b - segs[worst].a;
    if ((segs[worst].a == a || segs[worst].b == b) && w < 1e-6 * (b - a))
        throw SingularEndpoint("integrand appears non-integrable at an endpoint");
    throw QuadratureFailure("subdivision cap reached");
}

inline CMatrix integrate_finite(const MatrixIntegrand& f, double a, double b,
                                const QuadratureControl& q = {}) {
    return integrate_finite_ex(f, a, b, q).value;
}

/// ∫_a^∞ via t = a + s/(1−s) on (0,1); assumes at-least-exponential decay.
inline QuadOutcome integrate_semi_infinite_ex(const MatrixIntegrand& f, double a,
                                              const QuadratureControl& q = {}) {
    auto g = [&f, a](double s) {
        const double om = 1.0 - s;
        return f(a + s / om) * cxd{1.0 / (om * om), 0.0};
    };
    return integrate_finite_ex(g, 0.0, 1.0, q);
}

inline CMatrix integrate_semi_infinite(const MatrixIntegrand& f, double a,
                                       const QuadratureControl& q = {}) {
    return integrate_semi_infinite_ex(f, a, q).value;
}

/// ∫_0^b f with an integrable algebraic factor v^{E−I} at the left endpoint.
/// When the exponent spectrum has min Re in (0,1), split at min(b, 1e-3) and
/// substitute v = u² on the left piece.
inline QuadOutcome integrate_left_algebraic_ex(const MatrixIntegrand& f, double b,
                                               double min_re_exponent,
                                               const QuadratureControl& q = {}) {
    if (!(min_re_exponent > 0.0))
        throw DomainError("algebraic endpoint exponent must have positive real part");
    if (min_re_exponent >= 1.0) return integrate_finite_ex(f, 0.0, b, q);
    const double split = std::min(b, 1e-3);
    auto subst = [&f](double u) { return f(u * u) * cxd{2.0 * u, 0.0}; };
    QuadOutcome left = integrate_finite_ex(subst, 0.0, std::sqrt(split), q);
    if (split >= b) return left;
    QuadOutcome right = integrate_finite_ex(f, split, b, q);
    QuadOutcome out;
    out.value = left.value + right.value;
    out.error = left.error + right.error;
    out.segments = left.segments + right.segments;
    return out;
}

/// ∫_a^b of an integrand with algebraic factors (v−a)^{E−I} and (b−v)^{F−I}
/// at the two ends, as used by the beta-kernel representations.  The caller
/// supplies the integrand twice, parameterized by the distance from each
/// endpoint, so neither endpoint offset is ever reconstructed by subtraction:
///   f_from_a(u) = integrand(a + u),   f_from_b(w) = integrand(b − w).
inline QuadOutcome integrate_two_sided_algebraic_ex(const MatrixIntegrand& f_from_a,
                                                    const MatrixIntegrand& f_from_b, double a,
                                                    double b, double min_re_left,
                                                    double min_re_right,
                                                    const QuadratureControl& q = {}) {
    if (!(min_re_left > 0.0 && min_re_right > 0.0))
        throw DomainError("beta-kernel exponents must have positive real part");
    const double half = 0.5 * (b - a);
    QuadOutcome left = integrate_left_algebraic_ex(f_from_a, half, min_re_left, q);
    QuadOutcome right = integrate_left_algebraic_ex(f_from_b, half, min_re_right, q);
    QuadOutcome out;
    out.value = left.value + right.value;
    out.error = left.error + right.error;
    out.segments = left.segments + right.segments;
    return out;
}

}  // namespace imexp
