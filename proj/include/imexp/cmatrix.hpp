#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "imexp/errors.hpp"

namespace imexp {

using cxd = std::complex<double>;

/// Dense square complex matrix, row-major.  The one value type every
/// function in this library consumes and produces.
class CMatrix {
public:
    CMatrix() = default;

    explicit CMatrix(int r) : r_(r), a_(static_cast<std::size_t>(r) * r, cxd{0.0, 0.0}) {
        if (r < 1) throw DomainError("matrix dimension must be >= 1");
    }

    static CMatrix identity(int r) {
        CMatrix m(r);
        for (int i = 0; i < r; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const cxd> d) {
        CMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    static CMatrix diagonal(std::initializer_list<cxd> d) {
        return diagonal(std::span<const cxd>(d.begin(), d.size()));
    }

    static CMatrix from_rows(std::initializer_list<std::initializer_list<cxd>> rows) {
        const int r = static_cast<int>(rows.size());
        CMatrix m(r);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != r) throw ShapeError("row length must equal row count");
            int j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    int dim() const { return r_; }
    bool empty() const { return r_ == 0; }

    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * r_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * r_ + j]; }

    std::span<const cxd> data() const { return a_; }
    std::span<cxd> data() { return a_; }

    CMatrix& operator+=(const CMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    CMatrix& operator*=(cxd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cxd s) { return a *= s; }
    friend CMatrix operator*(cxd s, CMatrix a) { return a *= s; }
    friend CMatrix operator-(CMatrix a) { return a *= cxd{-1.0, 0.0}; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        a.check_same_dim(b);
        const int r = a.r_;
        CMatrix c(r);
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < r; ++k) {
                const cxd aik = a(i, k);
                if (aik == cxd{0.0, 0.0}) continue;
                for (int j = 0; j < r; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    CMatrix adjoint() const {
        CMatrix c(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) c(j, i) = std::conj((*this)(i, j));
        return c;
    }

    CMatrix transpose() const {
        CMatrix c(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) c(j, i) = (*this)(i, j);
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    cxd trace() const {
        cxd t = 0.0;
        for (int i = 0; i < r_; ++i) t += (*this)(i, i);
        return t;
    }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    bool is_diagonal(double tol = 0.0) const {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j)
                if (i != j && std::abs((*this)(i, j)) > tol) return false;
        return true;
    }

    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.r_ == b.r_ && a.a_ == b.a_;
    }

private:
    void check_same_dim(const CMatrix& o) const {
        if (r_ != o.r_) throw ShapeError("matrix dimensions differ");
    }

    int r_ = 0;
    std::vector<cxd> a_;
};

inline CMatrix operator+(CMatrix a, cxd s) {  // a + s*I
    for (int i = 0; i < a.dim(); ++i) a(i, i) += s;
    return a;
}

inline CMatrix operator-(CMatrix a, cxd s) {  // a - s*I
    for (int i = 0; i < a.dim(); ++i) a(i, i) -= s;
    return a;
}

/// ‖AB − BA‖_F, the usual commutativity diagnostic.
inline double commutator_norm(const CMatrix& a, const CMatrix& b) {
    return (a * b - b * a).frobenius_norm();
}

inline bool commute(const CMatrix& a, const CMatrix& b, double tol = 1e-10) {
    return commutator_norm(a, b) <= tol * (1.0 + a.frobenius_norm() * b.frobenius_norm());
}

namespace detail {

/// LU factorization with partial pivoting, in place.  Returns the pivot
/// permutation; throws SingularMatrix when a pivot underflows.
inline std::vector<int> lu_factor(CMatrix& a) {
    const int n = a.dim();
    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) piv[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw SingularMatrix("exactly singular matrix in LU solve");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(piv[static_cast<std::size_t>(k)], piv[static_cast<std::size_t>(p)]);
        }
        const cxd inv_pivot = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cxd m = a(i, k) * inv_pivot;
            a(i, k) = m;
            if (m == cxd{0.0, 0.0}) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    return piv;
}

}  // namespace detail

/// Solve A·X = B.
inline CMatrix solve_left(CMatrix a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("solve_left: dimensions differ");
    const int n = a.dim();
    const auto piv = detail::lu_factor(a);
    CMatrix x(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = b(piv[static_cast<std::size_t>(i)], j);
    // forward substitution (unit lower)
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            const cxd m = a(i, k);
            if (m == cxd{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) x(i, j) -= m * x(k, j);
        }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        const cxd inv_pivot = 1.0 / a(k, k);
        for (int j = 0; j < n; ++j) x(k, j) *= inv_pivot;
        for (int i = 0; i < k; ++i) {
            const cxd m = a(i, k);
            if (m == cxd{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) x(i, j) -= m * x(k, j);
        }
    }
    return x;
}

/// Solve X·A = B  (i.e. X = B·A^{-1}), via the transposed system.
inline CMatrix solve_right(const CMatrix& b, const CMatrix& a) {
    return solve_left(a.transpose(), b.transpose()).transpose();
}

inline CMatrix inverse(const CMatrix& a) { return solve_left(a, CMatrix::identity(a.dim())); }

}  // namespace imexp
