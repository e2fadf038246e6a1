#pragma once

#include <cmath>

#include "imexp/spectral.hpp"

namespace imexp {

/// exp(M) by scaling and squaring with the [13/13] Padé approximant.
inline CMatrix matrix_exp(const CMatrix& m) {
    if (!m.all_finite()) throw DomainError("matrix_exp requires finite entries");
    const int r = m.dim();
    static constexpr double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    double norm1 = 0.0;  // max column sum
    for (int j = 0; j < r; ++j) {
        double s = 0.0;
        for (int i = 0; i < r; ++i) s += std::abs(m(i, j));
        norm1 = std::max(norm1, s);
    }
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

    CMatrix a = m;
    if (s > 0) a *= cxd{std::ldexp(1.0, -s), 0.0};

    const CMatrix ident = CMatrix::identity(r);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a2 * a4;

    const CMatrix u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
                           a2 * b[3] + ident * b[1]);
    const CMatrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] +
                      a2 * b[2] + ident * b[0];

    CMatrix e = solve_left(v - u, v + u);
    for (int k = 0; k < s; ++k) e = e * e;
    if (!e.all_finite()) throw Overflow("matrix_exp overflowed");
    return e;
}

/// t^A = exp(A·ln t) for real t > 0.
inline CMatrix matrix_power_real_base(double t, const CMatrix& a) {
    if (!(t > 0.0)) throw DomainError("matrix_power_real_base requires t > 0");
    const double lt = std::log(t);
    if (lt == 0.0) return CMatrix::identity(a.dim());
    return matrix_exp(a * cxd{lt, 0.0});
}

/// z^A = exp(A·Log z) with the principal logarithm; z off the branch cut.
inline CMatrix matrix_power_complex_base(cxd z, const CMatrix& a) {
    if (z == cxd{0.0, 0.0} || (z.imag() == 0.0 && z.real() < 0.0))
        throw DomainError("matrix_power_complex_base requires z off (-inf, 0]");
    return matrix_exp(a * std::log(z));
}

/// True iff every eigenvalue has real part strictly above tol.
inline bool is_positive_stable(const CMatrix& m, double tol = 0.0) {
    for (const cxd& ev : eigenvalues(m))
        if (!(ev.real() > tol)) return false;
    return true;
}

/// min over 0 ≤ k ≤ k_max and eigenvalues λ of |λ + k|; quantifies how far
/// M + kI stays from singularity over nonnegative integer shifts.
inline double shift_invertibility_margin(const CMatrix& m, int k_max) {
    double margin = std::numeric_limits<double>::infinity();
    for (const cxd& ev : eigenvalues(m))
        for (int k = 0; k <= k_max; ++k)
            margin = std::min(margin, std::abs(ev + static_cast<double>(k)));
    return margin;
}

}  // namespace imexp
