// Acceptance gate: runs every identity suite on the standard box
// (r in {1,2,3}, x in [0.25,8], |t|,|v| <= 0.9, spectra in
// [0.5,3]x[-0.5,0.5], 20 trials per suite, fixed seed) and prints one
// pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "imexp/verify.hpp"
#include "support/oracles.hpp"

using namespace imexp;
using verify::SuiteResult;
using verify::VerificationReport;
using verify::VerifyConfig;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

struct TimedSuite {
    SuiteResult result;
    double seconds = 0.0;
};

double max_residual_or_inf(const SuiteResult& s) { return s.max_residual(); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

int main() {
    VerifyConfig cfg;
    cfg.seed = 42;
    cfg.dims = {1, 2, 3};
    cfg.trials = 20;

    std::map<std::string, TimedSuite> suites;
    const auto t_all0 = std::chrono::steady_clock::now();
    for (const auto& name : verify::suite_names()) {
        const auto t0 = std::chrono::steady_clock::now();
        TimedSuite ts;
        ts.result = verify::run_suite(name, cfg);
        ts.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        suites[name] = std::move(ts);
    }
    const double full_run_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all0).count();

    auto suite_pass = [&](const std::string& name) { return suites[name].result.all_pass(); };
    auto suite_res = [&](const std::string& name) {
        return max_residual_or_inf(suites[name].result);
    };
    auto suite_time = [&](const std::string& name) { return suites[name].seconds; };

    // 1. decompositions at 1e-9 within 10 s
    report(1,
           suite_pass("decompositions") && suite_res("decompositions") <= 1e-9 &&
               suite_time("decompositions") < 10.0,
           "decomposition identities settle at 1e-9",
           "max residual " + fmt(suite_res("decompositions")) + ", " +
               fmt(suite_time("decompositions")) + " s");

    // 2. dual-engine agreement at 1e-7 within 60 s
    {
        const std::vector<std::string> dual = {"integral_reps_s3", "integral_reps_s4",
                                               "corollaries_s4", "integral_reps_s5",
                                               "euler_integrals_s5"};
        bool pass = true;
        double worst = 0.0, total = 0.0;
        for (const auto& n : dual) {
            pass = pass && suite_pass(n);
            worst = std::max(worst, suite_res(n));
            total += suite_time(n);
        }
        report(2, pass && total < 60.0, "series and quadrature engines agree at 1e-7",
               "max residual " + fmt(worst) + ", " + fmt(total) + " s");
    }

    // 3. Bessel connection, 1e-7 overall and 1e-9 on the scalar cross-check
    {
        const SuiteResult& s = suites["bessel_connections"].result;
        bool pass = s.all_pass();
        double scalar_worst = 0.0;
        for (const auto& c : s.cases)
            if (c.dimension == 1) scalar_worst = std::max(scalar_worst, c.residual);
        pass = pass && scalar_worst <= 1e-9;
        report(3, pass, "Bessel kernel forms agree at 1e-7 (1x1 scalar kernel at 1e-9)",
               "max residual " + fmt(s.max_residual()) + ", scalar " + fmt(scalar_worst));
    }

    // 4. derivative suites at 1e-6 (first order) / 1e-4 (second order)
    {
        const bool pass = suite_pass("derivatives_s3") && suite_pass("derivatives_s5") &&
                          suite_pass("partials_s5");
        const double worst = std::max({suite_res("derivatives_s3"), suite_res("derivatives_s5"),
                                       suite_res("partials_s5")});
        report(4, pass, "derivative closed forms match finite differences",
               "max residual " + fmt(worst));
    }

    // 5. addition/multiplication at 1e-8, v=1 degeneracy at 1e-12
    {
        const SuiteResult& s = suites["addition_multiplication"].result;
        bool pass = s.all_pass();
        double degenerate_worst = 0.0;
        for (const auto& c : s.cases)
            if (c.tolerance <= 1e-12) degenerate_worst = std::max(degenerate_worst, c.residual);
        pass = pass && degenerate_worst <= 1e-12;
        report(5, pass, "addition/multiplication expansions at 1e-8, exact v=1 degeneracy",
               "max residual " + fmt(s.max_residual()) + ", degenerate " + fmt(degenerate_worst));
    }

    // 6. fractional-type integrals for k in {1,2} at 1e-6
    report(6, suite_pass("fractional_integrals") && suite_res("fractional_integrals") <= 1e-6,
           "fractional-type integrals match the augmented series for k in {1,2}",
           "max residual " + fmt(suite_res("fractional_integrals")));

    // 7. Gauss value at 1e-6
    report(7, suite_pass("gauss_value") && suite_res("gauss_value") <= 1e-6,
           "unit-argument Gauss value matches the gamma closed form",
           "max residual " + fmt(suite_res("gauss_value")));

    // 8. recurrence at 1e-9
    report(8, suite_pass("recurrence") && suite_res("recurrence") <= 1e-9,
           "contiguous recurrence settles at 1e-9",
           "max residual " + fmt(suite_res("recurrence")));

    // 9. scalar collapse of every exported function against direct summation
    {
        double worst = 0.0;
        auto track = [&worst](cxd got, cxd want) {
            worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
        };
        const double x = 1.9;
        const cxd t{0.52, 0.21};
        const cxd a{0.9, 0.2}, b{1.6, -0.25}, e1{1.2, 0.3}, f1{2.2, 0.1}, g1{2.6, -0.2};
        auto wrap = [](cxd z) {
            CMatrix m(1);
            m(0, 0) = z;
            return m;
        };
        ParamSet gen;
        gen.A = wrap(a);
        gen.B = wrap(b);
        gen.numerators = {wrap(e1)};
        gen.denominators = {wrap(f1)};

        track(e_lower(x, t, wrap(a)).value(0, 0), oracle::e_lower(x, t, a, 90));
        track(e_upper(x, t, wrap(a)).value(0, 0), oracle::e_upper(x, t, a, 90));
        track(gen_pe_q(x, t, gen).value(0, 0), oracle::gen_peq(x, t, a, b, {e1}, {f1}, true, 110));
        track(gen_pE_q(x, t, gen).value(0, 0), oracle::gen_peq(x, t, a, b, {e1}, {f1}, false, 110));
        ParamSet shared;
        shared.numerators = {wrap(f1), wrap(e1)};
        shared.denominators = {wrap(f1)};
        track(pe_q(x, t, shared).value(0, 0), oracle::gen_peq(x, t, 1.0, f1, {e1}, {}, true, 110));
        track(pE_q(x, t, shared).value(0, 0), oracle::gen_peq(x, t, 1.0, f1, {e1}, {}, false, 110));
        ParamSet hyp;
        hyp.numerators = {wrap(e1)};
        hyp.denominators = {wrap(f1)};
        track(pfq(hyp, t).value(0, 0), oracle::pfq({e1}, {f1}, t, 120));
        track(prq(gen, t).value(0, 0), oracle::prq(a, b, {e1}, {f1}, t, 110));
        track(zero_f_one(wrap(f1), t).value(0, 0), oracle::zero_f_one(f1, t, 100));
        track(incomplete_gauss_lower(wrap(e1), wrap(f1), wrap(g1), x, t).value(0, 0),
              oracle::incomplete_gauss(e1, f1, g1, x, t, true, 120));
        track(incomplete_gauss_upper(wrap(e1), wrap(f1), wrap(g1), x, t).value(0, 0),
              oracle::incomplete_gauss(e1, f1, g1, x, t, false, 120));
        track(gamma_matrix(wrap(a))(0, 0), gamma_c(a));
        track(gamma_matrix_inverse(wrap(a))(0, 0), rgamma_c(a));
        track(lower_incomplete_gamma_matrix(wrap(a), x)(0, 0), lower_incomplete_gamma_c(a, x));
        track(upper_incomplete_gamma_matrix(wrap(a), x)(0, 0), upper_incomplete_gamma_c(a, x));
        track(beta_matrix(wrap(a), wrap(b))(0, 0), gamma_c(a) * gamma_c(b) * rgamma_c(a + b));
        track(pochhammer_matrix(wrap(e1), 6)(0, 0), oracle::poch(e1, 6));
        report(9, worst <= 1e-11, "1x1 evaluations match direct scalar summation at 1e-11",
               "max deviation " + fmt(worst));
    }

    // 10. determinism of the full run, and the run finishes inside 5 minutes
    {
        bool identical = true;
        for (const auto& name : verify::suite_names()) {
            const SuiteResult again = verify::run_suite(name, cfg);
            const SuiteResult& first = suites[name].result;
            if (again.cases.size() != first.cases.size()) identical = false;
            for (std::size_t i = 0; identical && i < again.cases.size(); ++i)
                identical = again.cases[i].residual == first.cases[i].residual &&
                            again.cases[i].inputs_digest == first.cases[i].inputs_digest;
        }
        report(10, identical && full_run_seconds < 300.0,
               "repeated full runs reproduce residuals bit-for-bit in under 5 minutes",
               std::string(identical ? "identical" : "DIVERGED") + ", " + fmt(full_run_seconds) +
                   " s");
    }

    if (failures == 0) std::printf("all acceptance criteria satisfied\n");
    else std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
