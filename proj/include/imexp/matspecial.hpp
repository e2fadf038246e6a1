#pragma once

#include "imexp/matfun.hpp"

namespace imexp {

namespace detail {

inline void require_no_gamma_pole(const CMatrix& e, double tol = 1e-10) {
    for (const cxd& ev : eigenvalues(e))
        if (near_nonpositive_integer(ev, tol))
            throw Pole("eigenvalue within tolerance of a nonpositive integer");
}

}  // namespace detail

/// Γ(E) via the functional calculus.
inline CMatrix gamma_matrix(const CMatrix& e) {
    detail::require_no_gamma_pole(e);
    return apply_scalar_function(e, sf_gamma());
}

/// Γ^{-1}(E); entire, defined for every square matrix.
inline CMatrix gamma_matrix_inverse(const CMatrix& e) {
    return apply_scalar_function(e, sf_rgamma());
}

/// γ(E,x).
inline CMatrix lower_incomplete_gamma_matrix(const CMatrix& e, double x) {
    if (!(x > 0.0)) throw DomainError("lower incomplete gamma needs x > 0");
    detail::require_no_gamma_pole(e);
    return apply_scalar_function(e, sf_lower_igamma(x));
}

/// Γ(E,x).
inline CMatrix upper_incomplete_gamma_matrix(const CMatrix& e, double x) {
    if (!(x > 0.0)) throw DomainError("upper incomplete gamma needs x > 0");
    return apply_scalar_function(e, sf_upper_igamma(x));
}

/// The lower/upper split of Γ(E) at x.
struct IncompleteSplit {
    CMatrix lower;
    CMatrix upper;
    CMatrix total;
    double x = 0.0;
};

inline IncompleteSplit incomplete_split(const CMatrix& e, double x) {
    IncompleteSplit s;
    s.lower = lower_incomplete_gamma_matrix(e, x);
    s.upper = upper_incomplete_gamma_matrix(e, x);
    s.total = gamma_matrix(e);
    s.x = x;
    return s;
}

/// B(E,F) = Γ(E)·Γ(F)·Γ^{-1}(E+F); requires EF = FE.
inline CMatrix beta_matrix(const CMatrix& e, const CMatrix& f) {
    if (!commute(e, f)) throw CommutativityViolation("beta_matrix requires EF = FE");
    return gamma_matrix(e) * gamma_matrix(f) * gamma_matrix_inverse(e + f);
}

/// (E)_n = E(E+I)...(E+(n-1)I), with (E)_0 = I.
inline CMatrix pochhammer_matrix(const CMatrix& e, int n) {
    if (n < 0) throw DomainError("pochhammer_matrix needs n >= 0");
    CMatrix p = CMatrix::identity(e.dim());
    for (int k = 0; k < n; ++k) p = p * (e + cxd{static_cast<double>(k), 0.0});
    return p;
}

/// (E;x)_n = γ(E+nI,x)·Γ^{-1}(E).
inline CMatrix incomplete_pochhammer_lower(const CMatrix& e, double x, int n) {
    if (n < 0) throw DomainError("incomplete Pochhammer needs n >= 0");
    const CMatrix shifted = e + cxd{static_cast<double>(n), 0.0};
    return lower_incomplete_gamma_matrix(shifted, x) * gamma_matrix_inverse(e);
}

/// [E;x]_n = Γ(E+nI,x)·Γ^{-1}(E).
inline CMatrix incomplete_pochhammer_upper(const CMatrix& e, double x, int n) {
    if (n < 0) throw DomainError("incomplete Pochhammer needs n >= 0");
    const CMatrix shifted = e + cxd{static_cast<double>(n), 0.0};
    return upper_incomplete_gamma_matrix(shifted, x) * gamma_matrix_inverse(e);
}

/// (E)_{kn} through the factorization
/// k^{kn} · (E/k)_n (E+I)/k)_n ... ((E+(k-1)I)/k)_n.
inline CMatrix generalized_pochhammer_split(const CMatrix& e, int k, int n) {
    if (k < 1) throw DomainError("generalized_pochhammer_split needs k >= 1");
    if (n < 0) throw DomainError("generalized_pochhammer_split needs n >= 0");
    CMatrix p = CMatrix::identity(e.dim());
    const double inv_k = 1.0 / static_cast<double>(k);
    for (int j = 0; j < k; ++j) {
        const CMatrix shifted = (e + cxd{static_cast<double>(j), 0.0}) * cxd{inv_k, 0.0};
        p = p * pochhammer_matrix(shifted, n);
    }
    return p * cxd{std::pow(static_cast<double>(k), static_cast<double>(k) * n), 0.0};
}

}  // namespace imexp
