#include <catch2/catch_amalgamated.hpp>

#include "imexp/matfun.hpp"
#include "imexp/matspecial.hpp"
#include "imexp/quad.hpp"
#include "imexp/random_family.hpp"

using namespace imexp;

namespace {
double rel(const CMatrix& a, const CMatrix& b) {
    return (a - b).frobenius_norm() / (1.0 + b.frobenius_norm());
}

MatrixIntegrand scalar_fn(std::function<double(double)> f) {
    return [f](double t) {
        CMatrix m(1);
        m(0, 0) = f(t);
        return m;
    };
}
}  // namespace

TEST_CASE("finite quadrature basics", "[quad]") {
    SECTION("exponential on [0,x]") {
        const double x = 1.5;
        const CMatrix v = integrate_finite(scalar_fn([](double t) { return std::exp(-t); }), 0, x);
        CHECK(std::abs(v(0, 0) - cxd{1.0 - std::exp(-x), 0}) < 1e-12);
    }
    SECTION("integrable endpoint v^{-1/2}") {
        const CMatrix v = integrate_left_algebraic_ex(
                              scalar_fn([](double t) { return 1.0 / std::sqrt(t); }), 1.0, 0.5, {})
                              .value;
        CHECK(std::abs(v(0, 0) - cxd{2, 0}) < 1e-9);
    }
    SECTION("invalid interval") {
        CHECK_THROWS_AS(integrate_finite(scalar_fn([](double) { return 1.0; }), 1.0, 1.0),
                        DomainError);
    }
    SECTION("non-integrable endpoint is reported") {
        CHECK_THROWS_AS(
            integrate_finite(scalar_fn([](double t) { return std::pow(t, -1.5); }), 0.0, 1.0),
            SingularEndpoint);
    }
}

TEST_CASE("semi-infinite quadrature", "[quad]") {
    SECTION("pure exponential tail") {
        const double x = 1.5;
        const CMatrix v =
            integrate_semi_infinite(scalar_fn([](double t) { return std::exp(-t); }), x);
        CHECK(std::abs(v(0, 0) - cxd{std::exp(-x), 0}) < 1e-12);
    }
    SECTION("gamma integral on a commuting pair") {
        auto fam = random_commuting_family(3, 2, 1);
        const CMatrix e = fam[0];
        const CMatrix ident = CMatrix::identity(2);
        auto f = [&](double t) {
            return matrix_power_real_base(t, e - ident) * cxd{std::exp(-t), 0};
        };
        const CMatrix head = integrate_left_algebraic_ex(f, 1.0, 0.5, {}).value;
        const CMatrix tail = integrate_semi_infinite(f, 1.0);
        CHECK(rel(head + tail, gamma_matrix(e)) < 1e-9);
    }
    SECTION("second beta form over the half line") {
        auto fam = random_commuting_family(5, 2, 2);
        const CMatrix e = fam[0], f = fam[1];
        const CMatrix ident = CMatrix::identity(2);
        auto g = [&](double u) {
            return matrix_power_real_base(u, e - ident) *
                   matrix_power_real_base(1.0 + u, -(e + f));
        };
        const CMatrix head = integrate_left_algebraic_ex(g, 1.0, 0.5, {}).value;
        const CMatrix tail = integrate_semi_infinite(g, 1.0);
        CHECK(rel(head + tail, beta_matrix(e, f)) < 1e-8);
    }
}

TEST_CASE("quadrature structural properties", "[quad]") {
    auto fam = random_commuting_family(9, 2, 1);
    const CMatrix a = fam[0];
    auto f = [&](double t) { return matrix_exp(a * cxd{-t, 0}) * cxd{std::cos(t), 0}; };

    SECTION("interval additivity") {
        const CMatrix whole = integrate_finite(f, 0.0, 2.0);
        const CMatrix split = integrate_finite(f, 0.0, 0.7) + integrate_finite(f, 0.7, 2.0);
        CHECK(rel(split, whole) < 1e-10);
    }
    SECTION("linearity in the integrand") {
        auto g = [&](double t) { return matrix_exp(a * cxd{-2.0 * t, 0}); };
        auto combo = [&](double t) { return f(t) * cxd{2.0, 0} + g(t) * cxd{-0.5, 0}; };
        const CMatrix lhs = integrate_finite(combo, 0.0, 1.0);
        const CMatrix rhs = integrate_finite(f, 0.0, 1.0) * cxd{2.0, 0} +
                            integrate_finite(g, 0.0, 1.0) * cxd{-0.5, 0};
        CHECK(rel(lhs, rhs) < 1e-12);
    }
    SECTION("lower and upper incomplete pieces close to the full gamma") {
        const CMatrix ident = CMatrix::identity(2);
        auto k = [&](double t) {
            return matrix_power_real_base(t, a - ident) * cxd{std::exp(-t), 0};
        };
        const double x = 2.3;
        const CMatrix lower = integrate_left_algebraic_ex(k, x, 0.5, {}).value;
        const CMatrix upper = integrate_semi_infinite(k, x);
        CHECK(rel(lower + upper, gamma_matrix(a)) < 1e-9);
    }
    SECTION("subdivision cap reports QuadratureFailure") {
        QuadratureControl tight;
        tight.abs_tol = 1e-30;
        tight.rel_tol = 1e-30;
        tight.max_subdivisions = 3;
        auto wild = scalar_fn([](double t) { return std::sin(50.0 * t) / (0.01 + t); });
        CHECK_THROWS_AS(integrate_finite(wild, 0.0, 3.0, tight), QuadratureFailure);
    }
}
