#include <catch2/catch_amalgamated.hpp>

#include "imexp/incexp.hpp"
#include "imexp/random_family.hpp"
#include "support/oracles.hpp"

using namespace imexp;

namespace {

double rel(const CMatrix& a, const CMatrix& b) {
    return (a - b).frobenius_norm() / (1.0 + b.frobenius_norm());
}

ParamSet gen_params(CommutingFamily& fam, int p, int q) {
    ParamSet out;
    out.A = fam.draw({});
    out.B = fam.draw({});
    for (int i = 0; i < p; ++i) out.numerators.push_back(fam.draw({}));
    for (int j = 0; j < q; ++j) out.denominators.push_back(fam.draw({}));
    return out;
}

}  // namespace

TEST_CASE("e((x,t);A) series", "[incexp]") {
    CommutingFamily fam(101, 2);
    const CMatrix a = fam.draw({});
    SECTION("t=0 keeps the m=0 coefficient") {
        const double x = 1.4;
        const CMatrix want = apply_scalar_function(a, sf_reg_lower_gamma(x));
        CHECK(rel(e_lower(x, cxd{0, 0}, a).value, want) < 1e-12);
        const CMatrix wantu = apply_scalar_function(a, sf_reg_upper_gamma(x));
        CHECK(rel(e_upper(x, cxd{0, 0}, a).value, wantu) < 1e-12);
    }
    SECTION("lower plus upper is the scalar exponential") {
        const double x = 2.6;
        const cxd t{0.55, -0.35};
        const CMatrix sum = e_lower(x, t, a).value + e_upper(x, t, a).value;
        CHECK(rel(sum, CMatrix::identity(2) * std::exp(t)) < 1e-10);
    }
    SECTION("upper branch vanishes once x saturates") {
        const cxd t{0.8, 0.1};
        CHECK(e_upper(60.0, t, CMatrix::diagonal({cxd{1.3, 0}, cxd{2.4, 0}})).value
                  .frobenius_norm() <= 1e-9 * std::exp(std::abs(t)));
    }
    SECTION("positive stability is required") {
        CHECK_THROWS_AS(e_lower(1.0, cxd{0.5, 0}, CMatrix::diagonal({cxd{-1, 0}})), DomainError);
    }
    SECTION("scalar collapse against the oracle") {
        const cxd as{1.1, 0.3};
        CMatrix ma(1);
        ma(0, 0) = as;
        const double x = 1.7;
        const cxd t{0.5, 0.2};
        CHECK(std::abs(e_lower(x, t, ma).value(0, 0) - oracle::e_lower(x, t, as, 80)) < 1e-11);
        CHECK(std::abs(e_upper(x, t, ma).value(0, 0) - oracle::e_upper(x, t, as, 80)) < 1e-11);
    }
}

TEST_CASE("e((x,t);A) integral engines", "[incexp]") {
    CommutingFamily fam(103, 2);
    const CMatrix a = fam.draw({});
    const double x = 1.0;
    const cxd t{0.5, 0.0};
    const CMatrix adiag = CMatrix::diagonal({cxd{0.8, 0}, cxd{1.3, 0}});
    SECTION("both halves agree with the series") {
        CHECK(rel(e_lower_quad(x, t, adiag), e_lower(x, t, adiag).value) < 1e-8);
        CHECK(rel(e_upper_quad(x, t, adiag), e_upper(x, t, adiag).value) < 1e-8);
        CHECK(rel(e_lower_quad(x, t, a), e_lower(x, t, a).value) < 1e-8);
    }
    SECTION("the two quadrature halves close to e^t") {
        const CMatrix sum = e_lower_quad(x, t, a) + e_upper_quad(x, t, a);
        CHECK(rel(sum, CMatrix::identity(2) * std::exp(t)) < 1e-8);
    }
    SECTION("x->0 empties the lower integral") {
        CHECK(e_lower_quad(1e-12, t, a).frobenius_norm() < 1e-9);
    }
}

TEST_CASE("Bessel kernel forms", "[incexp]") {
    SECTION("scalar identity-order case") {
        // 1x1, A=[1]: integral of e^{-v} I_1(2 sqrt(vt)) against e((x,t);[2])
        const CMatrix a1 = CMatrix::diagonal({cxd{1.0, 0}});
        const double x = 1.3, t = 0.6;
        const CMatrix lhs = e_bessel_form(x, t, a1, true, true);
        const CMatrix rhs = e_lower(x, cxd{t, 0}, a1 + cxd{1, 0}).value;
        CHECK(rel(lhs, rhs) < 1e-9);
    }
    SECTION("unmodified kernel pairs with the alternating argument") {
        CommutingFamily fam(107, 2);
        const CMatrix a = fam.draw({});
        const double x = 2.0, t = 0.5;
        const CMatrix lhs = e_bessel_form(x, t, a, false, true);
        const CMatrix rhs = e_lower(x, cxd{-t, 0}, a + cxd{1, 0}).value;
        CHECK(rel(lhs, rhs) < 1e-7);
        const CMatrix lhs_up = e_bessel_form(x, t, a, true, false);
        const CMatrix rhs_up = e_upper(x, cxd{t, 0}, a + cxd{1, 0}).value;
        CHECK(rel(lhs_up, rhs_up) < 1e-7);
    }
    SECTION("t->0 limit approaches the ratio coefficient") {
        const CMatrix a = CMatrix::diagonal({cxd{0.9, 0}, cxd{1.7, 0}});
        const double x = 1.5;
        const CMatrix limit = apply_scalar_function(a + cxd{1, 0}, sf_reg_lower_gamma(x));
        CHECK(rel(e_bessel_form(x, 1e-4, a, true, true), limit) < 1e-3);
    }
}

TEST_CASE("shared-leading-parameter family", "[incexp]") {
    CommutingFamily fam(109, 2);
    const CMatrix c = fam.draw({});
    const CMatrix a = fam.draw({});
    const double x = 1.8;
    SECTION("shape guard") {
        ParamSet bad;
        bad.numerators = {c, a};
        bad.denominators = {a};
        CHECK_THROWS_AS(pe_q(x, cxd{0.4, 0}, bad), ShapeError);
    }
    SECTION("decomposition to the hypergeometric sum (e37 shape)") {
        ParamSet p;
        p.numerators = {c, a};
        p.denominators = {c};
        const cxd t{0.4, 0};
        const CMatrix sum = pe_q(x, t, p, {1e-12, 1500, 5}).value +
                            pE_q(x, t, p, {1e-12, 1500, 5}).value;
        CHECK(rel(sum, matrix_power_real_base(0.6, -a)) < 1e-9);
    }
    SECTION("repeated-parameter reduction (e38) against the closed form") {
        ParamSet p;
        p.numerators = {c, c};
        p.denominators = {c};
        const double t = 0.35;
        const CMatrix series = pe_q(x, cxd{-t, 0}, p).value;
        const CMatrix closed = matrix_power_real_base(1.0 + t, -c) *
                               apply_scalar_function(c, sf_reg_lower_gamma((1.0 + t) * x));
        CHECK(rel(series, closed) < 1e-10);
        CHECK(rel(pe_q_quad(x, cxd{-t, 0}, p), closed) < 1e-8);
    }
    SECTION("kernel quadrature matches the series (e35 and e40)") {
        ParamSet p;
        p.numerators = {c, a};
        p.denominators = {c};
        const cxd t{0.5, 0.2};
        CHECK(rel(pe_q_quad(x, t, p), pe_q(x, t, p).value) < 1e-8);
        ParamSet p3;
        p3.numerators = {c, a, fam.draw({})};
        p3.denominators = {c};
        const cxd ts{0.2, 0.1};  // keep x|t| inside the 2F1 kernel disk
        CHECK(rel(pe_q_quad(x, ts, p3), pe_q(x, ts, p3).value) < 1e-8);
    }
    SECTION("full-line kernel reproduces the reduced series") {
        ParamSet p;
        p.numerators = {c, a};
        p.denominators = {c, fam.draw({})};
        const cxd t{0.45, -0.2};
        ParamSet rest;
        rest.numerators = {a};
        rest.denominators = {p.denominators[1]};
        CHECK(rel(pfq_gamma_integral_quad(t, p), pfq(rest, t).value) < 1e-8);
    }
}

TEST_CASE("generalized family series", "[incexp]") {
    CommutingFamily fam(113, 2);
    SECTION("decomposition to pFq") {
        ParamSet p = gen_params(fam, 2, 1);
        const double x = 3.1;
        const cxd v{0.5, 0.25};
        const CMatrix sum = gen_pe_q(x, v, p, {1e-12, 1500, 5}).value +
                            gen_pE_q(x, v, p, {1e-12, 1500, 5}).value;
        ParamSet rest;
        rest.numerators = p.numerators;
        rest.denominators = p.denominators;
        CHECK(rel(sum, pfq(rest, v, {1e-12, 1500, 5}).value) < 1e-9);
    }
    SECTION("p=q=0 with A=I reduces to the two-list family") {
        const CMatrix b = fam.draw({});
        ParamSet p;
        p.A = CMatrix::identity(2);
        p.B = b;
        const double x = 1.2;
        const cxd v{0.6, -0.1};
        CHECK(rel(gen_pe_q(x, v, p).value, e_lower(x, v, b).value) < 1e-12);
        CHECK(rel(gen_pE_q(x, v, p).value, e_upper(x, v, b).value) < 1e-12);
    }
    SECTION("v=0 keeps the m=0 coefficient; scalar spot value") {
        ParamSet p = gen_params(fam, 1, 1);
        const double x = 0.9;
        const CMatrix want = apply_scalar_function(*p.B, sf_reg_upper_gamma(x));
        CHECK(rel(gen_pE_q(x, cxd{0, 0}, p).value, want) < 1e-12);
        ParamSet scalar;
        scalar.A = CMatrix::identity(1);
        scalar.B = CMatrix::identity(1);
        CHECK(std::abs(gen_pE_q(1.0, cxd{0, 0}, scalar).value(0, 0) - cxd{std::exp(-1.0), 0}) <
              1e-13);
    }
    SECTION("scalar collapse against the oracle") {
        const cxd a{0.8, 0.2}, b{1.4, -0.3}, e1{1.1, 0.25}, f1{2.3, 0.15};
        ParamSet p;
        p.A = CMatrix(1);
        (*p.A)(0, 0) = a;
        p.B = CMatrix(1);
        (*p.B)(0, 0) = b;
        p.numerators.emplace_back(1);
        p.numerators[0](0, 0) = e1;
        p.denominators.emplace_back(1);
        p.denominators[0](0, 0) = f1;
        const double x = 2.2;
        const cxd v{0.55, 0.15};
        CHECK(std::abs(gen_pe_q(x, v, p).value(0, 0) -
                       oracle::gen_peq(x, v, a, b, {e1}, {f1}, true, 100)) < 1e-11);
        CHECK(std::abs(gen_pE_q(x, v, p).value(0, 0) -
                       oracle::gen_peq(x, v, a, b, {e1}, {f1}, false, 100)) < 1e-11);
    }
}

TEST_CASE("generalized family integral engine", "[incexp]") {
    CommutingFamily fam(127, 2);
    ParamSet p = gen_params(fam, 1, 1);
    const double x = 1.6;
    const cxd v{0.6, 0.2};
    SECTION("kernel quadrature against the series") {
        CHECK(rel(gen_pE_q_quad(x, v, p), gen_pE_q(x, v, p).value) < 1e-7);
        CHECK(rel(gen_pe_q_quad(x, v, p), gen_pe_q(x, v, p).value) < 1e-7);
    }
    SECTION("the two kernel halves close to pFq") {
        ParamSet rest;
        rest.numerators = p.numerators;
        rest.denominators = p.denominators;
        const CMatrix sum = gen_pe_q_quad(x, v, p) + gen_pE_q_quad(x, v, p);
        CHECK(rel(sum, pfq(rest, v).value) < 1e-7);
    }
}

TEST_CASE("Euler integral forms of pRq", "[incexp]") {
    CommutingFamily fam(131, 2);
    SECTION("gamma kernel, one and two numerators") {
        ParamSet p = gen_params(fam, 1, 1);
        const cxd v{0.7, -0.2};
        CHECK(rel(prq_euler_integral(p, v, EulerForm::gamma_kernel), prq(p, v).value) < 1e-7);
        ParamSet p2 = gen_params(fam, 2, 1);
        CHECK(rel(prq_euler_integral(p2, v, EulerForm::gamma_kernel), prq(p2, v).value) < 1e-7);
    }
    SECTION("beta kernel with constructed positive stable difference") {
        ParamSet p;
        p.A = fam.draw({});
        p.B = fam.draw({});
        const auto eps = fam.draw_spectrum({0.5, 1.2, -0.3, 0.3});
        const auto gs = fam.draw_spectrum({0.6, 1.4, -0.3, 0.3});
        std::vector<cxd> fqs(eps.size());
        for (std::size_t i = 0; i < eps.size(); ++i) fqs[i] = eps[i] + gs[i];
        p.numerators = {fam.draw({}), fam.member(eps)};
        p.denominators = {fam.member(fqs)};
        const cxd v{0.55, 0.1};
        CHECK(rel(prq_euler_integral(p, v, EulerForm::beta_kernel), prq(p, v).value) < 1e-7);
    }
    SECTION("degenerate beta factor is excluded by precondition") {
        ParamSet p;
        p.A = fam.draw({});
        p.B = fam.draw({});
        const CMatrix m = fam.draw({});
        p.numerators = {m};
        p.denominators = {m};
        CHECK_THROWS_AS(prq_euler_integral(p, cxd{0.3, 0}, EulerForm::beta_kernel), DomainError);
    }
}

TEST_CASE("derivative closed forms", "[incexp]") {
    CommutingFamily fam(137, 2);
    ParamSet p = gen_params(fam, 1, 1);
    const double x = 2.4;
    const cxd v{0.45, 0.2};
    SECTION("n=0 passes through") {
        CHECK(rel(gen_pE_q_derivative(x, v, p, 0).value, gen_pE_q(x, v, p).value) == 0.0);
    }
    SECTION("n=1 against a central difference") {
        const double h = 1e-5;
        const CMatrix fd =
            (gen_pE_q(x, v + h, p).value - gen_pE_q(x, v - h, p).value) * cxd{1.0 / (2 * h), 0};
        CHECK(rel(fd, gen_pE_q_derivative(x, v, p, 1).value) < 1e-6);
    }
    SECTION("n=2 against a second difference") {
        const double h = 1e-4;
        const CMatrix fd = (gen_pE_q(x, v + h, p).value -
                            gen_pE_q(x, v, p).value * cxd{2, 0} +
                            gen_pE_q(x, v - h, p).value) *
                           cxd{1.0 / (h * h), 0};
        CHECK(rel(fd, gen_pE_q_derivative(x, v, p, 2).value) < 1e-4);
    }
    SECTION("x-derivative closed form and its sign") {
        const double hx = 1e-5 * x;
        const CMatrix fd_up =
            (gen_pE_q(x + hx, v, p).value - gen_pE_q(x - hx, v, p).value) * cxd{1.0 / (2 * hx), 0};
        CHECK(rel(fd_up, gen_pE_q_dx(x, v, p)) < 1e-6);
        const CMatrix fd_lo =
            (gen_pe_q(x + hx, v, p).value - gen_pe_q(x - hx, v, p).value) * cxd{1.0 / (2 * hx), 0};
        CHECK(rel(fd_lo, gen_pe_q_dx(x, v, p)) < 1e-6);
    }
    SECTION("scalar x-derivative collapse") {
        ParamSet scalar;
        scalar.A = CMatrix::identity(1);
        scalar.B = CMatrix::identity(1);
        const double xs = 1.1;
        const cxd vs{0.5, 0};
        // d/dx 0E0 = -e^{-x} 0R0(1,1; v x) with the scalar Bessel-type series
        const cxd want = -std::exp(-xs) * oracle::prq(1.0, 1.0, {}, {}, vs * xs, 60);
        CHECK(std::abs(gen_pE_q_dx(xs, vs, scalar)(0, 0) - want) < 1e-11);
    }
    SECTION("two-list family derivative ladder in t") {
        const CMatrix a = fam.draw({});
        const double h = 1e-5;
        const cxd t{0.3, 0.1};
        const CMatrix fd =
            (e_lower(x, t + h, a).value - e_lower(x, t - h, a).value) * cxd{1.0 / (2 * h), 0};
        CHECK(rel(fd, e_lower(x, t, a + cxd{1, 0}).value) < 1e-6);
        // closed-form x derivative (tx argument)
        const double hx = 1e-5 * x;
        const CMatrix fdx =
            (e_lower(x + hx, t, a).value - e_lower(x - hx, t, a).value) * cxd{1.0 / (2 * hx), 0};
        CHECK(rel(fdx, e_lower_dx(x, t, a)) < 1e-6);
        CHECK(rel(-e_lower_dx(x, t, a), e_upper_dx(x, t, a)) == 0.0);
    }
}

TEST_CASE("monotone saturation along real spectra", "[incexp]") {
    const CMatrix a = CMatrix::diagonal({cxd{0.7, 0}, cxd{1.9, 0}});
    const cxd t{0.5, 0};
    double prev_entry = -1.0;
    double prev_upper = std::numeric_limits<double>::infinity();
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const CMatrix ratio = apply_scalar_function(a, sf_reg_lower_gamma(x));
        CHECK(ratio(0, 0).real() > prev_entry);
        prev_entry = ratio(0, 0).real();
        const double un = e_upper(x, t, a).value.frobenius_norm();
        CHECK(un <= prev_upper + 1e-15);
        prev_upper = un;
    }
}

TEST_CASE("addition and multiplication expansions", "[incexp]") {
    CommutingFamily fam(139, 2);
    ParamSet p = gen_params(fam, 1, 1);
    const double x = 1.3;
    SECTION("addition formula at small arguments") {
        const cxd w{0.2, 0.1}, v{-0.15, 0.2};
        CHECK(rel(gen_pE_q(x, w + v, p).value, gen_pE_q_addition_sum(x, w, v, p, 30)) < 1e-8);
    }
    SECTION("multiplication formula and its v=1 degeneracy") {
        const cxd w{0.25, -0.1}, v{0.3, 0.2};
        CHECK(rel(gen_pE_q(x, w * v, p).value, gen_pE_q_multiplication_sum(x, w, v, p, 30)) <
              1e-8);
        CHECK(rel(gen_pE_q(x, w, p).value,
                  gen_pE_q_multiplication_sum(x, w, cxd{1, 0}, p, 30)) <= 1e-12);
    }
    SECTION("delta array shape") {
        const auto d2 = delta_array(2, *p.A);
        REQUIRE(d2.size() == 2);
        CHECK(rel(d2[0] + d2[1], *p.A + cxd{0.5, 0}) < 1e-14);
    }
}
