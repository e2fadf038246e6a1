#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "imexp/cmatrix.hpp"
#include "imexp/scalarfn.hpp"

namespace imexp {

/// Schur factorization source = Q·T·Q* with the diagonal reordered so that
/// eigenvalue clusters occupy contiguous index ranges.
struct SpectralData {
    CMatrix source;
    CMatrix Q;  // unitary
    CMatrix T;  // upper triangular
    std::vector<std::vector<int>> clusters;  // partition of {0..r-1}, contiguous
    double cond_estimate = 0.0;              // eigenvector matrix condition (large sentinel if defective)
    double blocking_tol = 0.1;

    std::vector<cxd> eigenvalues() const {
        std::vector<cxd> ev(static_cast<std::size_t>(T.dim()));
        for (int i = 0; i < T.dim(); ++i) ev[static_cast<std::size_t>(i)] = T(i, i);
        return ev;
    }
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    const int r = m.dim();
    Eigen::MatrixXcd e(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) e(i, j) = m(i, j);
    return e;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd& e) {
    CMatrix m(static_cast<int>(e.rows()));
    for (int i = 0; i < e.rows(); ++i)
        for (int j = 0; j < e.cols(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = e(i, j);
    return m;
}

/// Union-find clustering of the diagonal of T at absolute distance `tol`.
inline std::vector<int> cluster_ids(const std::vector<cxd>& ev, double tol) {
    const int n = static_cast<int>(ev.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)]) <= tol)
                parent[static_cast<std::size_t>(find(i))] = find(j);
    // renumber by first appearance
    std::vector<int> ids(static_cast<std::size_t>(n), -1);
    std::vector<int> root_to_id;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        int id = -1;
        for (std::size_t k = 0; k < root_to_id.size(); ++k)
            if (root_to_id[k] == root) id = static_cast<int>(k);
        if (id < 0) {
            id = static_cast<int>(root_to_id.size());
            root_to_id.push_back(root);
        }
        ids[static_cast<std::size_t>(i)] = id;
    }
    return ids;
}

/// Swap the adjacent diagonal entries (k, k+1) of the triangular factor with
/// a unitary similarity, updating Q alongside.
inline void swap_adjacent(CMatrix& t, CMatrix& q, int k) {
    const int r = t.dim();
    const cxd t11 = t(k, k), t12 = t(k, k + 1), t22 = t(k + 1, k + 1);
    const cxd v1 = t12, v2 = t22 - t11;
    const double n = std::sqrt(std::norm(v1) + std::norm(v2));
    if (n == 0.0) return;  // equal entries: nothing to move
    const cxd g11 = v1 / n, g21 = v2 / n;           // first column of G
    const cxd g12 = -std::conj(g21), g22 = std::conj(g11);
    // rows k,k+1 of T <- G* . rows
    for (int j = 0; j < r; ++j) {
        const cxd a = t(k, j), b = t(k + 1, j);
        t(k, j) = std::conj(g11) * a + std::conj(g21) * b;
        t(k + 1, j) = std::conj(g12) * a + std::conj(g22) * b;
    }
    // columns k,k+1 of T and Q <- columns . G
    for (int i = 0; i < r; ++i) {
        const cxd a = t(i, k), b = t(i, k + 1);
        t(i, k) = a * g11 + b * g21;
        t(i, k + 1) = a * g12 + b * g22;
        const cxd qa = q(i, k), qb = q(i, k + 1);
        q(i, k) = qa * g11 + qb * g21;
        q(i, k + 1) = qa * g12 + qb * g22;
    }
    t(k + 1, k) = 0.0;
}

/// Eigenvectors of an upper-triangular matrix with pairwise-distinct
/// diagonal, as a unit upper-triangular matrix W (and its inverse).
inline bool triangular_eigenvectors(const CMatrix& t, CMatrix& w, CMatrix& winv,
                                    double min_sep = 1e-10) {
    const int r = t.dim();
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (std::abs(t(i, i) - t(j, j)) < min_sep) return false;
    w = CMatrix::identity(r);
    for (int j = 1; j < r; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            cxd s = t(i, j);
            for (int k = i + 1; k < j; ++k) s += t(i, k) * w(k, j);
            w(i, j) = -s / (t(i, i) - t(j, j));
        }
    }
    winv = CMatrix::identity(r);
    for (int j = r - 1; j >= 0; --j)
        for (int i = j - 1; i >= 0; --i) {
            cxd s = w(i, j);
            for (int k = i + 1; k < j; ++k) s += w(i, k) * winv(k, j);
            winv(i, j) = -s;
        }
    return true;
}

/// Condition estimate of the eigenvector matrix recovered from the Schur
/// form.  Returns a large sentinel when eigenvalues (numerically) repeat.
inline double eigenvector_condition(const CMatrix& t) {
    CMatrix w, winv;
    if (!triangular_eigenvectors(t, w, winv)) return 1e308;
    return w.frobenius_norm() * winv.frobenius_norm();
}

}  // namespace detail

/// Complex Schur decomposition with eigenvalue blocking.  Deterministic for
/// fixed input.
inline SpectralData schur_decompose(const CMatrix& m, double blocking_tol = 0.1) {
    if (!m.all_finite()) throw DomainError("schur_decompose requires finite entries");
    const int r = m.dim();
    SpectralData sd;
    sd.source = m;
    sd.blocking_tol = blocking_tol;

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(detail::to_eigen(m));
    if (schur.info() != Eigen::Success)
        throw ConvergenceFailure("complex Schur QR iteration did not converge");
    CMatrix t = detail::from_eigen(schur.matrixT());
    CMatrix q = detail::from_eigen(schur.matrixU());

    // zero the strictly lower part defensively (Eigen leaves exact zeros, but
    // keep the invariant explicit)
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j) t(i, j) = 0.0;

    auto diag = [&t, r]() {
        std::vector<cxd> d(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) d[static_cast<std::size_t>(i)] = t(i, i);
        return d;
    };
    std::vector<int> ids = detail::cluster_ids(diag(), blocking_tol);

    // bubble members of each cluster (ordered by first appearance) into
    // contiguous positions; swaps only ever cross distinct clusters
    std::vector<int> order;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (std::find(order.begin(), order.end(), ids[i]) == order.end()) order.push_back(ids[i]);
    int pos = 0;
    for (int cid : order) {
        for (int scan = pos; scan < r; ++scan) {
            if (ids[static_cast<std::size_t>(scan)] != cid) continue;
            for (int k = scan; k > pos; --k) {
                detail::swap_adjacent(t, q, k - 1);
                std::swap(ids[static_cast<std::size_t>(k - 1)], ids[static_cast<std::size_t>(k)]);
            }
            ++pos;
        }
    }

    sd.T = t;
    sd.Q = q;
    int i = 0;
    while (i < r) {
        std::vector<int> cluster;
        const int cid = ids[static_cast<std::size_t>(i)];
        while (i < r && ids[static_cast<std::size_t>(i)] == cid) cluster.push_back(i++);
        sd.clusters.push_back(std::move(cluster));
    }
    sd.cond_estimate = detail::eigenvector_condition(t);
    return sd;
}

inline std::vector<cxd> eigenvalues(const CMatrix& m) {
    if (m.dim() == 1) return {m(0, 0)};
    return schur_decompose(m).eigenvalues();
}

/// Shared eigenbasis for a commuting pair: A = V·diag(alpha)·V^{-1} and
/// B = V·diag(beta)·V^{-1}.  Empty when A has near-repeated eigenvalues, B
/// does not diagonalize in A's basis, or the basis is ill conditioned.
struct JointEigenbasis {
    CMatrix v;
    CMatrix vinv;
    std::vector<cxd> alpha;
    std::vector<cxd> beta;
};

inline std::optional<JointEigenbasis> try_joint_diagonalize(const CMatrix& a, const CMatrix& b) {
    const int r = a.dim();
    if (b.dim() != r) return std::nullopt;
    JointEigenbasis jb;
    if (r == 1) {
        jb.v = CMatrix::identity(1);
        jb.vinv = jb.v;
        jb.alpha = {a(0, 0)};
        jb.beta = {b(0, 0)};
        return jb;
    }
    SpectralData sd;
    try {
        sd = schur_decompose(a);
    } catch (const Error&) {
        return std::nullopt;
    }
    CMatrix w, winv;
    if (!detail::triangular_eigenvectors(sd.T, w, winv, 1e-6)) return std::nullopt;
    if (w.frobenius_norm() * winv.frobenius_norm() > 1e8) return std::nullopt;
    jb.v = sd.Q * w;
    jb.vinv = winv * sd.Q.adjoint();
    const CMatrix bhat = jb.vinv * b * jb.v;
    double offdiag = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(bhat(i, j)));
    if (offdiag > 1e-10 * (1.0 + bhat.max_abs())) return std::nullopt;
    jb.alpha.resize(static_cast<std::size_t>(r));
    jb.beta.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        jb.alpha[static_cast<std::size_t>(i)] = sd.T(i, i);
        jb.beta[static_cast<std::size_t>(i)] = bhat(i, i);
    }
    return jb;
}

namespace detail {

/// f on one atomic (clustered) diagonal block by Taylor expansion about the
/// cluster mean.
inline CMatrix taylor_block(const CMatrix& tb, const ScalarFn& f) {
    const int s = tb.dim();
    cxd mu{0.0, 0.0};
    for (int i = 0; i < s; ++i) mu += tb(i, i);
    mu /= static_cast<double>(s);

    CMatrix n = tb;
    for (int i = 0; i < s; ++i) n(i, i) -= mu;

    constexpr int batch = 40;
    constexpr int cap = 240;
    CMatrix sum(s);
    CMatrix npow = CMatrix::identity(s);
    std::vector<cxd> coeff;
    int stall = 0;
    for (int k = 0; k < cap; ++k) {
        if (k >= static_cast<int>(coeff.size())) {
            const int want = std::min(static_cast<int>(coeff.size()) + batch, cap);
            coeff = f.taylor_coefficients(mu, want);
        }
        const CMatrix term = npow * coeff[static_cast<std::size_t>(k)];
        sum += term;
        const double tn = term.frobenius_norm();
        if (k >= s && tn <= 1e-16 * (1.0 + sum.frobenius_norm())) {
            if (++stall >= 2) return sum;
        } else {
            stall = 0;
        }
        npow = npow * n;
    }
    throw ConvergenceFailure("in-cluster Taylor expansion did not converge");
}

}  // namespace detail

/// f(M) by Schur–Parlett: f on the (clustered) diagonal, Taylor expansion
/// within clusters, Parlett recurrence across them.
inline CMatrix apply_scalar_function(const CMatrix& m, const ScalarFn& f) {
    const int r = m.dim();
    if (!f.value) throw DomainError("apply_scalar_function requires an evaluator");
    if (r == 1) {
        if (f.singular_at && f.singular_at(m(0, 0)))
            throw SingularFunction("scalar function singular at the eigenvalue");
        CMatrix out(1);
        out(0, 0) = f.value(m(0, 0));
        return out;
    }

    const SpectralData sd = schur_decompose(m);
    for (const cxd& ev : sd.eigenvalues())
        if (f.singular_at && f.singular_at(ev))
            throw SingularFunction("scalar function singular at an eigenvalue");

    const CMatrix& t = sd.T;
    const int nblocks = static_cast<int>(sd.clusters.size());
    std::vector<int> start(static_cast<std::size_t>(nblocks)), size(static_cast<std::size_t>(nblocks));
    for (int b = 0; b < nblocks; ++b) {
        start[static_cast<std::size_t>(b)] = sd.clusters[static_cast<std::size_t>(b)].front();
        size[static_cast<std::size_t>(b)] = static_cast<int>(sd.clusters[static_cast<std::size_t>(b)].size());
    }

    CMatrix ft(r);
    // diagonal blocks
    for (int b = 0; b < nblocks; ++b) {
        const int s0 = start[static_cast<std::size_t>(b)], n = size[static_cast<std::size_t>(b)];
        if (n == 1) {
            ft(s0, s0) = f.value(t(s0, s0));
            continue;
        }
        CMatrix tb(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) tb(i, j) = t(s0 + i, s0 + j);
        const CMatrix fb = detail::taylor_block(tb, f);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ft(s0 + i, s0 + j) = fb(i, j);
    }

    // Parlett recurrence over block superdiagonals: solve
    // T_ii·F_ij − F_ij·T_jj = F_ii·T_ij − T_ij·F_jj + Σ_k (F_ik·T_kj − T_ik·F_kj)
    for (int d = 1; d < nblocks; ++d) {
        for (int bi = 0; bi + d < nblocks; ++bi) {
            const int bj = bi + d;
            const int si = start[static_cast<std::size_t>(bi)], ni = size[static_cast<std::size_t>(bi)];
            const int sj = start[static_cast<std::size_t>(bj)], nj = size[static_cast<std::size_t>(bj)];
            std::vector<std::vector<cxd>> c(static_cast<std::size_t>(ni),
                                            std::vector<cxd>(static_cast<std::size_t>(nj), cxd{0.0, 0.0}));
            auto add_product = [&](int rs, int rn, int cs_, int cn, bool f_left, double sign) {
                // accumulate sign * X(si..,rs..)·Y(rs..,sj..) where X is F or T
                for (int i = 0; i < ni; ++i)
                    for (int j = 0; j < nj; ++j) {
                        cxd acc{0.0, 0.0};
                        for (int k = 0; k < rn; ++k) {
                            const cxd left = f_left ? ft(si + i, rs + k) : t(si + i, rs + k);
                            const cxd right = f_left ? t(rs + k, cs_ + j) : ft(rs + k, cs_ + j);
                            acc += left * right;
                        }
                        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += sign * acc;
                    }
                (void)cn;
            };
            add_product(si, ni, sj, nj, true, +1.0);   // F_ii T_ij
            add_product(sj, nj, sj, nj, false, -1.0);  // T_ij F_jj
            for (int bk = bi + 1; bk < bj; ++bk) {
                const int sk = start[static_cast<std::size_t>(bk)], nk = size[static_cast<std::size_t>(bk)];
                add_product(sk, nk, sj, nj, true, +1.0);   // F_ik T_kj
                add_product(sk, nk, sj, nj, false, -1.0);  // T_ik F_kj
            }
            // triangular Sylvester solve, columns left to right, rows bottom up
            for (int j = 0; j < nj; ++j) {
                for (int i = ni - 1; i >= 0; --i) {
                    cxd rhs = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    for (int s = i + 1; s < ni; ++s) rhs -= t(si + i, si + s) * ft(si + s, sj + j);
                    for (int s = 0; s < j; ++s) rhs += ft(si + i, sj + s) * t(sj + s, sj + j);
                    ft(si + i, sj + j) = rhs / (t(si + i, si + i) - t(sj + j, sj + j));
                }
            }
        }
    }

    return sd.Q * ft * sd.Q.adjoint();
}

}  // namespace imexp
