// imexp: evaluate incomplete exponential matrix functions and run the
// identity-verification suites.
//
// Exit codes: 0 success; 1 verification failures; 2 configuration/parse
// errors; 3 numerical evaluation failures.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "imexp/imexp.hpp"

namespace {

using imexp::cxd;
using imexp::json;

cxd parse_complex(const std::string& s) {
    // "re" or "re+imi" / "re-imi"; also accepts a pure "imi" form
    std::string str = s;
    if (str.empty()) throw imexp::ParseError("empty complex literal");
    if (str.back() == 'i' || str.back() == 'I') {
        str.pop_back();
        // split at the last +/- that is not an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = str.size(); i-- > 1;) {
            const char c = str[i];
            if ((c == '+' || c == '-') && str[i - 1] != 'e' && str[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        try {
            if (split == std::string::npos) return {0.0, std::stod(str.empty() ? "1" : str)};
            const double re = std::stod(str.substr(0, split));
            std::string imtxt = str.substr(split);
            if (imtxt == "+") imtxt = "1";
            if (imtxt == "-") imtxt = "-1";
            return {re, std::stod(imtxt)};
        } catch (const std::exception&) {
            throw imexp::ParseError("bad complex literal: " + s);
        }
    }
    try {
        return {std::stod(str), 0.0};
    } catch (const std::exception&) {
        throw imexp::ParseError("bad complex literal: " + s);
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw imexp::ParseError("cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw imexp::ParseError(std::string("invalid JSON: ") + e.what());
    }
    return doc;
}

void write_output(const std::string& path, std::string body) {
    if (body.empty() || body.back() != '\n') body += '\n';
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw imexp::ParseError("cannot write file: " + path);
    out << body;
}

struct EvalRequest {
    std::string function;
    imexp::Engine engine = imexp::Engine::series;
    imexp::IncExpArgs args;
    imexp::SeriesControl ctrl;
    imexp::QuadratureControl qctrl;
    bool modified = true;  // bessel-form flags
    bool lower = true;
};

imexp::EvalResult as_result(const imexp::CMatrix& m, double err) {
    imexp::EvalResult r;
    r.value = m;
    r.terms_used = 0;
    r.est_error = err;
    return r;
}

/// Dispatch table: function name -> evaluator.  Matrix-function commands use
/// A (and B where noted) from the parameter document.
imexp::EvalResult dispatch(const EvalRequest& r) {
    using namespace imexp;
    const ParamSet& p = r.args.params;
    const double x = r.args.x;
    const cxd t = r.args.t;
    const bool quad = r.engine == Engine::quadrature;
    auto need_a = [&]() -> const CMatrix& {
        if (!p.A) throw ShapeError("this function requires \"A\" in the parameter file");
        return *p.A;
    };
    auto quad_err = [&]() { return std::max(r.qctrl.abs_tol, r.qctrl.rel_tol); };

    if (r.function == "e-lower")
        return quad ? as_result(e_lower_quad(x, t, need_a(), r.qctrl), quad_err())
                    : e_lower(x, t, need_a(), r.ctrl);
    if (r.function == "e-upper")
        return quad ? as_result(e_upper_quad(x, t, need_a(), r.qctrl), quad_err())
                    : e_upper(x, t, need_a(), r.ctrl);
    if (r.function == "e-bessel-form")
        return as_result(
            e_bessel_form(x, t.real(), need_a(), r.modified, r.lower, r.qctrl), quad_err());
    if (r.function == "pe-q")
        return quad ? as_result(pe_q_quad(x, t, p, r.qctrl), quad_err()) : pe_q(x, t, p, r.ctrl);
    if (r.function == "pE-q")
        return quad ? as_result(pE_q_quad(x, t, p, r.qctrl), quad_err()) : pE_q(x, t, p, r.ctrl);
    if (r.function == "gen-pe-q")
        return quad ? as_result(gen_pe_q_quad(x, t, p, r.qctrl), quad_err())
                    : gen_pe_q(x, t, p, r.ctrl);
    if (r.function == "gen-pE-q")
        return quad ? as_result(gen_pE_q_quad(x, t, p, r.qctrl), quad_err())
                    : gen_pE_q(x, t, p, r.ctrl);
    if (r.function == "gen-pE-q-derivative") return gen_pE_q_derivative(x, t, p, r.args.n, r.ctrl);
    if (r.function == "gen-pe-q-derivative") return gen_pe_q_derivative(x, t, p, r.args.n, r.ctrl);
    if (r.function == "gen-pE-q-dx") return as_result(gen_pE_q_dx(x, t, p, r.ctrl), r.ctrl.tol);
    if (r.function == "gen-pe-q-dx") return as_result(gen_pe_q_dx(x, t, p, r.ctrl), r.ctrl.tol);
    if (r.function == "pfq") return pfq(p, t, r.ctrl);
    if (r.function == "prq")
        return quad ? as_result(prq_euler_integral(p, t, EulerForm::gamma_kernel, r.qctrl),
                                quad_err())
                    : prq(p, t, r.ctrl);
    if (r.function == "prq-derivative") return prq_derivative(p, t, r.args.n, r.ctrl);
    if (r.function == "zero-f-one") return zero_f_one(need_a(), t, r.ctrl);
    if (r.function == "incomplete-gauss-lower" || r.function == "incomplete-gauss-upper") {
        if (p.numerators.size() != 2 || p.denominators.size() != 1)
            throw ShapeError("incomplete Gauss functions take E=[E,F] and F=[G]");
        const bool low = r.function == "incomplete-gauss-lower";
        return low ? incomplete_gauss_lower(p.numerators[0], p.numerators[1], p.denominators[0],
                                            x, t, r.ctrl)
                   : incomplete_gauss_upper(p.numerators[0], p.numerators[1], p.denominators[0],
                                            x, t, r.ctrl);
    }
    if (r.function == "gamma-matrix") return as_result(gamma_matrix(need_a()), 1e-13);
    if (r.function == "gamma-matrix-inverse")
        return as_result(gamma_matrix_inverse(need_a()), 1e-13);
    if (r.function == "lower-incomplete-gamma-matrix")
        return as_result(lower_incomplete_gamma_matrix(need_a(), x), 1e-12);
    if (r.function == "upper-incomplete-gamma-matrix")
        return as_result(upper_incomplete_gamma_matrix(need_a(), x), 1e-12);
    if (r.function == "beta-matrix") {
        if (!p.A || !p.B) throw ShapeError("beta-matrix requires A and B");
        return as_result(beta_matrix(*p.A, *p.B), 1e-12);
    }
    if (r.function == "pochhammer-matrix")
        return as_result(pochhammer_matrix(need_a(), r.args.n), 0.0);
    if (r.function == "matrix-exp") return as_result(matrix_exp(need_a()), 1e-14);
    if (r.function == "matrix-power")
        return as_result(matrix_power_real_base(x, need_a()), 1e-14);
    throw imexp::ParseError("unknown function: " + r.function);
}

int run_eval(const EvalRequest& req, const std::string& out_path) {
    const imexp::EvalResult res = dispatch(req);
    write_output(out_path, imexp::eval_result_to_json(res.value, res.terms_used, res.est_error)
                               .dump(2));
    return 0;
}

int run_verify(const std::string& suite_arg, const imexp::verify::VerifyConfig& cfg,
               const std::string& report_path, const std::string& format) {
    std::vector<std::string> names;
    if (suite_arg == "all") {
        names = imexp::verify::suite_names();
    } else {
        std::stringstream ss(suite_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            bool known = false;
            for (const auto& n : imexp::verify::suite_names()) known = known || n == item;
            if (!known) {
                std::cerr << "unknown suite: " << item << "\n";
                return 2;
            }
            names.push_back(item);
        }
        if (names.empty()) {
            std::cerr << "no suites selected\n";
            return 2;
        }
    }
    const imexp::verify::VerificationReport report = imexp::verify::run_suites(names, cfg);
    for (const auto& s : report.suites) {
        const double mr = s.max_residual();
        std::cout << s.suite << ": " << s.pass_count() << "/" << s.cases.size() << " pass, max residual ";
        if (std::isfinite(mr)) std::cout << mr;
        else std::cout << "inf";
        std::cout << "\n";
    }
    if (!report_path.empty()) {
        if (format == "csv") write_output(report_path, imexp::verify::report_to_csv(report));
        else write_output(report_path, imexp::verify::report_to_json(report).dump(2));
    }
    return report.all_pass() ? 0 : 1;
}

int run_list_suites() {
    const auto& registry = imexp::verify::suite_registry();
    for (const auto& s : registry) {
        std::cout << s.name;
        if (!s.theorems.empty()) {
            std::cout << " -> ";
            for (std::size_t i = 0; i < s.theorems.size(); ++i)
                std::cout << (i ? ", " : "") << s.theorems[i];
        }
        std::cout << "  (" << s.covers << ")\n";
    }
    std::cout << registry.size() << " suites\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incomplete exponential matrix functions: evaluation and verification"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a function and emit a matrix document");
    std::string function, engine_str = "series", params_path, out_path;
    std::string t_str = "0", lambda_str = "0";
    EvalRequest req;
    eval->add_option("--function", function, "function name (see README)")->required();
    eval->add_option("--engine", engine_str, "series|quadrature")
        ->check(CLI::IsMember({"series", "quadrature"}));
    eval->add_option("--params", params_path, "parameter JSON file {A,B,E,F}")->required();
    eval->add_option("--x", req.args.x, "incompleteness split point");
    eval->add_option("--t,--v", t_str, "series argument, complex as \"re\" or \"re+imi\"");
    eval->add_option("--lambda", lambda_str, "scale argument");
    eval->add_option("--k", req.args.k, "parameter-array multiplicity");
    eval->add_option("--n", req.args.n, "derivative order / Pochhammer index");
    eval->add_option("--tol", req.ctrl.tol, "series tolerance");
    eval->add_option("--max-terms", req.ctrl.max_terms, "series term cap");
    eval->add_option("--quad-abs-tol", req.qctrl.abs_tol, "quadrature absolute tolerance");
    eval->add_option("--quad-rel-tol", req.qctrl.rel_tol, "quadrature relative tolerance");
    eval->add_flag("--modified,!--unmodified", req.modified, "Bessel form: modified kernel");
    eval->add_flag("--lower,!--upper", req.lower, "Bessel form: [0,x] half");
    eval->add_option("-o,--output", out_path, "output path (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run identity-verification suites");
    imexp::verify::VerifyConfig cfg;
    std::string suite_arg = "all", dims_str = "1,2,3", report_path, format = "json";
    bool seed_given = false;
    verify_cmd->add_option("--suite", suite_arg, "suite name(s, comma separated) or 'all'");
    verify_cmd->add_option("--dims", dims_str, "dimension cycle, e.g. 1,2,3");
    verify_cmd->add_option("--trials", cfg.trials, "cases per suite");
    verify_cmd->add_option("--seed", cfg.seed, "base seed (default: IMEXP_SEED or 42)")
        ->each([&seed_given](const std::string&) { seed_given = true; });
    verify_cmd->add_option("--report", report_path, "report output path");
    verify_cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // list-suites
    auto* list_cmd = app.add_subcommand("list-suites", "print the suite registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list_cmd->parsed()) return run_list_suites();
        if (verify_cmd->parsed()) {
            if (!seed_given) {
                if (const char* env = std::getenv("IMEXP_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
            }
            cfg.dims.clear();
            std::stringstream ss(dims_str);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                const int d = std::stoi(item);
                if (d < 1) throw imexp::ParseError("dimensions must be >= 1");
                cfg.dims.push_back(d);
            }
            if (cfg.dims.empty() || cfg.trials < 1)
                throw imexp::ParseError("need at least one dimension and one trial");
            return run_verify(suite_arg, cfg, report_path, format);
        }
        // eval
        req.function = function;
        req.engine = engine_str == "quadrature" ? imexp::Engine::quadrature
                                                : imexp::Engine::series;
        req.args.t = parse_complex(t_str);
        req.args.lambda = parse_complex(lambda_str);
        if (!std::isfinite(req.args.x)) throw imexp::ParseError("x must be finite");
        req.args.params = imexp::paramset_from_json(load_json_file(params_path));
        return run_eval(req, out_path);
    } catch (const imexp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const imexp::ConvergenceFailure& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const imexp::QuadratureFailure& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const imexp::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
