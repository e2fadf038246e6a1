#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "imexp/errors.hpp"

namespace imexp {

using cxd = std::complex<double>;

namespace detail {

// Lanczos coefficients (g = 607/128, 15 terms).  Good to ~14-15 significant
// digits over the right half plane.
inline constexpr double kLanczosG = 4.7421875;
inline constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

inline cxd lanczos_sum(cxd z) {
    cxd s = kLanczosC[0];
    for (int k = 1; k < 15; ++k) s += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
    return s;
}

/// Distance from z to the nearest nonpositive integer.
inline double nonpositive_integer_distance(cxd z) {
    const double k0 = std::max(0.0, std::round(-z.real()));
    double d = std::abs(z + k0);
    if (k0 >= 1.0) d = std::min(d, std::abs(z + (k0 - 1.0)));
    d = std::min(d, std::abs(z + (k0 + 1.0)));
    return d;
}

inline bool near_nonpositive_integer(cxd z, double tol) {
    return nonpositive_integer_distance(z) <= tol;
}

/// sin(πz) with argument reduction, accurate near the integers.
inline cxd sin_pi(cxd z) {
    const double n = std::round(z.real());
    const cxd w = z - n;
    const cxd s = std::sin(std::numbers::pi * w);
    return (std::fmod(std::abs(n), 2.0) == 0.0) ? s : -s;
}

inline cxd log_sin_pi(cxd z) {
    const double pi = std::numbers::pi;
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(pi * z));
    // |e^{±2πi z}| is negligible; sin πz ≈ ∓ e^{∓iπz} / (2i)
    const cxd i{0.0, 1.0};
    if (z.imag() > 0.0) return -i * pi * z - std::log(2.0) + i * pi / 2.0;
    return i * pi * z - std::log(2.0) - i * pi / 2.0;
}

}  // namespace detail

/// Complex log-gamma (principal on the right half plane; correct modulo 2πi
/// after reflection, which is all the exponentiating callers need).
inline cxd lgamma_c(cxd z) {
    const double pi = std::numbers::pi;
    if (z.real() >= 0.5) {
        const cxd t = z + (detail::kLanczosG - 0.5);
        return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t +
               std::log(detail::lanczos_sum(z));
    }
    return std::log(pi) - detail::log_sin_pi(z) - lgamma_c(1.0 - z);
}

/// Γ(z).  Throws Pole on nonpositive integers (within 1e-12).
inline cxd gamma_c(cxd z) {
    const double pi = std::numbers::pi;
    if (detail::near_nonpositive_integer(z, 1e-12))
        throw Pole("gamma_c at nonpositive integer");
    if (z.real() >= 0.5) {
        const cxd t = z + (detail::kLanczosG - 0.5);
        return std::sqrt(2.0 * pi) * std::exp((z - 0.5) * std::log(t) - t) *
               detail::lanczos_sum(z);
    }
    if (std::abs(z.imag()) <= 20.0) return pi / (detail::sin_pi(z) * gamma_c(1.0 - z));
    return std::exp(lgamma_c(z));
}

/// 1/Γ(z), entire; 0 at the nonpositive integers.
inline cxd rgamma_c(cxd z) {
    const double pi = std::numbers::pi;
    if (z.real() >= 0.5) {
        if (z.real() > 160.0) return std::exp(-lgamma_c(z));
        const cxd t = z + (detail::kLanczosG - 0.5);
        return std::exp(-(z - 0.5) * std::log(t) + t) /
               (std::sqrt(2.0 * pi) * detail::lanczos_sum(z));
    }
    if (std::abs(z.imag()) <= 20.0) return detail::sin_pi(z) * gamma_c(1.0 - z) / pi;
    return std::exp(-lgamma_c(z));
}

namespace detail {

/// Regularized lower incomplete gamma by series, valid for any complex a
/// (entire); one rgamma per term on the slow path, a plain recurrence when
/// the spectrum stays clear of the nonpositive integers.
inline cxd reg_lower_series(cxd a, double x) {
    if (a.real() > -0.25 || nonpositive_integer_distance(a) > 0.25) {
        // term recurrence through x/(a+n); safe: a+n never near 0
        cxd sum{1.0, 0.0};
        cxd term{1.0, 0.0};
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + static_cast<double>(n));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum) && n > x) break;
        }
        const cxd lead = a * std::log(x) - x - lgamma_c(a + 1.0);
        if (lead.real() < -745.0) return {0.0, 0.0};
        return std::exp(lead) * sum;
    }
    // entire-safe fallback: Σ x^n / Γ(a+n+1)
    cxd sum{0.0, 0.0};
    double xn = 1.0;
    for (int n = 0; n < 10000; ++n) {
        const cxd t = xn * rgamma_c(a + static_cast<double>(n + 1));
        sum += t;
        if (n > x + 8 && std::abs(t) < 1e-17 * (1.0 + std::abs(sum))) break;
        xn *= x;
    }
    return std::exp(a * std::log(x) - x) * sum;
}

/// Continued fraction for Γ(a,x)·x^{-a}·e^{x} (modified Lentz).
inline cxd upper_gamma_cf(cxd a, double x) {
    constexpr double tiny = 1e-300;
    cxd b = x + 1.0 - a;
    cxd c = 1.0 / tiny;
    cxd d = 1.0 / b;
    cxd h = d;
    for (int i = 1; i <= 2000; ++i) {
        const cxd an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cxd delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h;
    }
    throw ConvergenceFailure("upper incomplete gamma continued fraction");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a,x) = γ(a,x)/Γ(a); entire in a.
inline cxd reg_lower_gamma(cxd a, double x) {
    if (x < 0.0) throw DomainError("reg_lower_gamma requires x >= 0");
    if (x == 0.0) return {0.0, 0.0};
    if (x > a.real() + 1.0 && a.real() > 0.0) {
        const cxd q = std::exp(a * std::log(x) - x - lgamma_c(a)) * detail::upper_gamma_cf(a, x);
        return 1.0 - q;
    }
    return detail::reg_lower_series(a, x);
}

/// Regularized upper incomplete gamma Q(a,x) = Γ(a,x)/Γ(a) = 1 − P(a,x).
inline cxd reg_upper_gamma(cxd a, double x) {
    if (x < 0.0) throw DomainError("reg_upper_gamma requires x >= 0");
    if (x == 0.0) return {1.0, 0.0};
    if (x > a.real() + 1.0 && a.real() > 0.0)
        return std::exp(a * std::log(x) - x - lgamma_c(a)) * detail::upper_gamma_cf(a, x);
    return 1.0 - detail::reg_lower_series(a, x);
}

/// γ(a,x) for x > 0.  Series for x ≤ Re(a)+1, otherwise Γ(a) − Γ(a,x).
inline cxd lower_incomplete_gamma_c(cxd a, double x) {
    if (x <= 0.0) throw DomainError("lower_incomplete_gamma_c requires x > 0");
    if (detail::near_nonpositive_integer(a, 1e-12))
        throw Pole("lower incomplete gamma at nonpositive integer parameter");
    return reg_lower_gamma(a, x) * gamma_c(a);
}

/// Γ(a,x) for x > 0.  Continued fraction for x > Re(a)+1, else Γ(a) − γ(a,x).
/// Entire in a; exact nonpositive-integer parameters go through the
/// exponential-integral route.
inline cxd upper_incomplete_gamma_c(cxd a, double x) {
    if (x <= 0.0) throw DomainError("upper_incomplete_gamma_c requires x > 0");
    if (x > a.real() + 1.0)
        return std::exp(a * std::log(x) - x) * detail::upper_gamma_cf(a, x);
    if (detail::near_nonpositive_integer(a, 1e-12)) {
        // Γ(0,x) = E1(x) by series, then recurse down to negative integers.
        const int k = static_cast<int>(std::lround(-a.real()));
        constexpr double euler = 0.57721566490153286061;
        cxd e1 = -euler - std::log(x);
        double term = -1.0;
        for (int n = 1; n < 200; ++n) {
            term *= -x / n;
            e1 -= term / n;
            if (std::abs(term) < 1e-18) break;
        }
        cxd g = e1;  // Γ(0, x)
        double aa = 0.0;
        for (int j = 0; j < k; ++j) {
            aa -= 1.0;
            g = (g - std::pow(x, aa) * std::exp(-x)) / aa;
        }
        return g;
    }
    return gamma_c(a) * reg_upper_gamma(a, x);
}

/// Bessel function of the first kind, complex order and argument, by the
/// ascending series.  Stops once five consecutive terms fall below
/// 1e-16·|partial sum|.
inline cxd bessel_j_c(cxd nu, cxd z) {
    if (nu.imag() == 0.0 && nu.real() <= -1.0 &&
        std::abs(nu.real() - std::round(nu.real())) < 1e-12)
        throw Pole("bessel_j_c: order is a negative integer");
    if (z == cxd{0.0, 0.0}) {
        if (nu == cxd{0.0, 0.0}) return {1.0, 0.0};
        if (nu.real() > 0.0) return {0.0, 0.0};
        throw DomainError("bessel_j_c at z=0 with Re(order) < 0");
    }
    const cxd w = z / 2.0;
    cxd term = std::exp(nu * std::log(w)) * rgamma_c(nu + 1.0);
    cxd sum = term;
    const cxd w2 = -w * w;
    int stall = 0;
    for (int m = 1; m <= 500; ++m) {
        term *= w2 / (static_cast<double>(m) * (nu + static_cast<double>(m)));
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++stall >= 5) return sum;
        } else {
            stall = 0;
        }
    }
    throw ConvergenceFailure("bessel_j_c series cap reached");
}

/// Modified Bessel function via the phase relation I_ν(z) = e^{-iπν/2} J_ν(z e^{iπ/2}),
/// intended for real z > 0 (the only sector exercised here).
inline cxd bessel_i_c(cxd nu, cxd z) {
    const cxd i{0.0, 1.0};
    const double half_pi = std::numbers::pi / 2.0;
    return std::exp(-i * half_pi * nu) * bessel_j_c(nu, z * std::exp(i * half_pi));
}

/// A scalar analytic function bundled with derivative access, for lifting to
/// matrix arguments.  `derivative` at order 0 must match `value`.
struct ScalarFn {
    std::function<cxd(cxd)> value;
    std::function<cxd(int, cxd)> derivative;     // optional exact derivatives
    std::function<bool(cxd)> singular_at;        // optional pole predicate
    std::function<double(cxd)> expansion_radius; // optional safe Taylor radius

    /// Taylor coefficients f^{(k)}(z0)/k! for k < count.  Uses exact
    /// derivatives when supplied, otherwise trapezoidal Cauchy integrals on a
    /// circle inside the analyticity region.
    std::vector<cxd> taylor_coefficients(cxd z0, int count) const {
        std::vector<cxd> c(static_cast<std::size_t>(count));
        if (derivative) {
            double kfact = 1.0;
            for (int k = 0; k < count; ++k) {
                if (k > 0) kfact *= k;
                if (!std::isfinite(kfact))
                    throw DerivativeUnavailable("factorial overflow in Taylor coefficients");
                c[static_cast<std::size_t>(k)] = derivative(k, z0) / kfact;
            }
            return c;
        }
        if (!value) throw DerivativeUnavailable("scalar function has no evaluator");
        const double rho = expansion_radius ? std::min(expansion_radius(z0), 4.0) : 1.0;
        if (!(rho > 0.0))
            throw DerivativeUnavailable("no positive expansion radius at requested point");
        int n = 64;
        while (n < 2 * count) n *= 2;
        std::vector<cxd> f(static_cast<std::size_t>(n));
        const double two_pi = 2.0 * std::numbers::pi;
        for (int j = 0; j < n; ++j) {
            const double th = two_pi * j / n;
            f[static_cast<std::size_t>(j)] = value(z0 + rho * cxd{std::cos(th), std::sin(th)});
        }
        double rpow = 1.0;
        for (int k = 0; k < count; ++k) {
            cxd s{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                const double th = -two_pi * k * j / n;
                s += f[static_cast<std::size_t>(j)] * cxd{std::cos(th), std::sin(th)};
            }
            c[static_cast<std::size_t>(k)] = s / (static_cast<double>(n) * rpow);
            rpow *= rho;
        }
        return c;
    }

    /// k-th derivative; falls back on Cauchy-circle differentiation.
    cxd derivative_or_numeric(int order, cxd z) const {
        if (order == 0) return value(z);
        if (derivative) return derivative(order, z);
        const auto c = taylor_coefficients(z, order + 1);
        return c[static_cast<std::size_t>(order)] * factorial_of(order);
    }

    static ScalarFn from_value(std::function<cxd(cxd)> v,
                               std::function<double(cxd)> radius = nullptr,
                               std::function<bool(cxd)> singular = nullptr) {
        ScalarFn f;
        f.value = std::move(v);
        f.expansion_radius = std::move(radius);
        f.singular_at = std::move(singular);
        return f;
    }

    static ScalarFn with_derivative(std::function<cxd(cxd)> v, std::function<cxd(int, cxd)> d,
                                    std::function<bool(cxd)> singular = nullptr) {
        ScalarFn f;
        f.value = std::move(v);
        f.derivative = std::move(d);
        f.singular_at = std::move(singular);
        return f;
    }

private:
    static double factorial_of(int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }
};

// ---- ready-made kernels ---------------------------------------------------

inline ScalarFn sf_exp() {
    return ScalarFn::with_derivative([](cxd z) { return std::exp(z); },
                                     [](int, cxd z) { return std::exp(z); });
}

inline ScalarFn sf_identity() {
    return ScalarFn::with_derivative([](cxd z) { return z; }, [](int k, cxd z) -> cxd {
        if (k == 0) return z;
        if (k == 1) return {1.0, 0.0};
        return {0.0, 0.0};
    });
}

inline double gamma_pole_radius(cxd z) {
    return 0.5 * detail::nonpositive_integer_distance(z);
}

inline ScalarFn sf_gamma(double pole_tol = 1e-10) {
    return ScalarFn::from_value([](cxd z) { return gamma_c(z); }, &gamma_pole_radius,
                                [pole_tol](cxd z) {
                                    return detail::near_nonpositive_integer(z, pole_tol);
                                });
}

inline ScalarFn sf_rgamma() {
    return ScalarFn::from_value([](cxd z) { return rgamma_c(z); },
                                [](cxd) { return 1.0; });
}

inline ScalarFn sf_lower_igamma(double x, double pole_tol = 1e-10) {
    return ScalarFn::from_value([x](cxd a) { return lower_incomplete_gamma_c(a, x); },
                                &gamma_pole_radius, [pole_tol](cxd z) {
                                    return detail::near_nonpositive_integer(z, pole_tol);
                                });
}

inline ScalarFn sf_upper_igamma(double x) {
    return ScalarFn::from_value([x](cxd a) { return upper_incomplete_gamma_c(a, x); },
                                [](cxd) { return 1.0; });
}

/// γ(a,x)/Γ(a) as one entire kernel; the conditioning-friendly coefficient
/// for every incomplete-exponential series.
inline ScalarFn sf_reg_lower_gamma(double x) {
    return ScalarFn::from_value([x](cxd a) { return reg_lower_gamma(a, x); },
                                [](cxd) { return 1.0; });
}

inline ScalarFn sf_reg_upper_gamma(double x) {
    return ScalarFn::from_value([x](cxd a) { return reg_upper_gamma(a, x); },
                                [](cxd) { return 1.0; });
}

/// τ^z e^{−τ}/Γ(z) as one kernel, entire in z.  Keeping the three factors
/// together is what lets t^{mA+B−I} e^{−t} Γ^{-1}(mA+B) stay representable
/// when the eigenvalue scales of the factors diverge.
inline ScalarFn sf_gamma_weight(double tau) {
    if (!(tau > 0.0)) throw DomainError("gamma weight requires tau > 0");
    const double ln_tau = std::log(tau);
    return ScalarFn::from_value(
        [tau, ln_tau](cxd z) {
            const cxd e = z * ln_tau - tau - lgamma_c(z);
            if (e.real() < -745.0) return cxd{0.0, 0.0};
            return std::exp(e);
        },
        [](cxd) { return 1.0; });
}

inline ScalarFn sf_bessel_j_of_order(cxd z) {
    return ScalarFn::from_value([z](cxd nu) { return bessel_j_c(nu, z); },
                                [](cxd) { return 1.0; });
}

inline ScalarFn sf_bessel_i_of_order(cxd z) {
    return ScalarFn::from_value([z](cxd nu) { return bessel_i_c(nu, z); },
                                [](cxd) { return 1.0; });
}

}  // namespace imexp
