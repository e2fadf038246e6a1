#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "imexp/matfun.hpp"

namespace imexp {

/// Rectangle in the complex plane from which eigenvalues are drawn.
struct SpectrumBox {
    double re_lo = 0.5;
    double re_hi = 3.0;
    double im_lo = -0.5;
    double im_hi = 0.5;
};

/// SplitMix64; hand-rolled so that streams are identical across platforms
/// and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    cxd complex_in(const SpectrumBox& box) {
        const double re = uniform(box.re_lo, box.re_hi);
        const double im = uniform(box.im_lo, box.im_hi);
        return {re, im};
    }

    /// Complex scalar with |z| <= radius (uniform over the disk).
    cxd complex_in_disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double th = uniform(0.0, 2.0 * std::numbers::pi);
        return {r * std::cos(th), r * std::sin(th)};
    }

    /// Derived stream, for per-case reproducibility.
    Rng fork(std::uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t state_;
};

namespace detail {

/// Random invertible matrix with condition number about `kappa`:
/// Q1·diag(log-spaced singular values)·Q2*.
inline CMatrix random_basis(Rng& rng, int r, double kappa = 3.0) {
    if (r == 1) return CMatrix::identity(1);
    auto gaussian_pair = [&rng]() {
        // Box-Muller
        const double u1 = std::max(rng.uniform(), 1e-300);
        const double u2 = rng.uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        return cxd{m * std::cos(2.0 * std::numbers::pi * u2),
                   m * std::sin(2.0 * std::numbers::pi * u2)};
    };
    auto random_unitary = [&]() {
        CMatrix g(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) g(i, j) = gaussian_pair();
        // Gram-Schmidt columns
        for (int j = 0; j < r; ++j) {
            for (int k = 0; k < j; ++k) {
                cxd proj{0.0, 0.0};
                for (int i = 0; i < r; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < r; ++i) g(i, j) -= proj * g(i, k);
            }
            double nrm = 0.0;
            for (int i = 0; i < r; ++i) nrm += std::norm(g(i, j));
            nrm = std::sqrt(nrm);
            for (int i = 0; i < r; ++i) g(i, j) /= nrm;
        }
        return g;
    };
    const CMatrix q1 = random_unitary();
    const CMatrix q2 = random_unitary();
    CMatrix s(r);
    for (int i = 0; i < r; ++i)
        s(i, i) = std::pow(kappa, static_cast<double>(i) / std::max(1, r - 1));
    return q1 * s * q2.adjoint();
}

inline std::vector<cxd> draw_separated_spectrum(Rng& rng, int r, const SpectrumBox& box,
                                                double min_sep, double margin, int k_max) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<cxd> ev(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) ev[static_cast<std::size_t>(i)] = rng.complex_in(box);
        bool ok = true;
        for (int i = 0; i < r && ok; ++i) {
            for (int j = i + 1; j < r; ++j)
                if (std::abs(ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)]) <
                    min_sep) {
                    ok = false;
                    break;
                }
            for (int k = 0; k <= k_max; ++k)
                if (std::abs(ev[static_cast<std::size_t>(i)] + static_cast<double>(k)) <= margin) {
                    ok = false;
                    break;
                }
        }
        if (ok) return ev;
    }
    throw GenerationFailure("could not draw a spectrum meeting the separation/margin bounds");
}

}  // namespace detail

/// A commuting family sharing one eigenbasis; members are assembled as
/// V·diag(λ)·V^{-1}, so each is a polynomial in the diagonalizable seed
/// matrix V·diag(distinct λ)·V^{-1}.
class CommutingFamily {
public:
    CommutingFamily(std::uint64_t seed, int r, double basis_kappa = 3.0)
        : rng_(Rng(seed).fork(0x66616d696c79ULL)), r_(r) {
        v_ = detail::random_basis(rng_, r, basis_kappa);
        vinv_ = inverse(v_);
    }

    int dim() const { return r_; }
    Rng& rng() { return rng_; }

    CMatrix member(const std::vector<cxd>& spectrum) const {
        CMatrix d = CMatrix::diagonal(std::span<const cxd>(spectrum.data(), spectrum.size()));
        return v_ * d * vinv_;
    }

    /// Member with eigenvalues drawn from `box`, pairwise separated and with
    /// shift-invertibility margin above 0.1.
    CMatrix draw(const SpectrumBox& box, double min_sep = 0.25) {
        return member(detail::draw_separated_spectrum(rng_, r_, box, min_sep, 0.1, 500));
    }

    /// Eigenvalues of the most recent draw are not tracked; use this to draw a
    /// raw spectrum for constrained constructions (sums, differences).
    std::vector<cxd> draw_spectrum(const SpectrumBox& box, double min_sep = 0.25) {
        return detail::draw_separated_spectrum(rng_, r_, box, min_sep, 0.1, 500);
    }

private:
    Rng rng_;
    int r_;
    CMatrix v_;
    CMatrix vinv_;
};

/// `count` pairwise-commuting, positive stable matrices with
/// shift_invertibility_margin(·, 500) > 0.1; deterministic in `seed`.
inline std::vector<CMatrix> random_commuting_family(std::uint64_t seed, int r, int count,
                                                    const SpectrumBox& box = {}) {
    if (!(box.re_lo > 0.0)) throw DomainError("spectrum box must have strictly positive Re range");
    if (box.re_hi <= box.re_lo || box.im_hi < box.im_lo)
        throw DomainError("degenerate spectrum box");
    CommutingFamily fam(seed, r);
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(fam.draw(box));
    return out;
}

}  // namespace imexp
