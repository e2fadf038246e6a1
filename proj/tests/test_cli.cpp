#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "imexp/json_io.hpp"
#include "imexp/incexp.hpp"
#include "imexp/random_family.hpp"

using namespace imexp;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() { return std::getenv("IMEXP_BIN"); }

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("imexp_cli_out_" +
                                                      std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(out);
    return r;
}

fs::path write_params(const ParamSet& p, const std::string& name) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << paramset_to_json(p).dump(2) << "\n";
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli eval matches the library and round-trips", "[cli]") {
    if (!cli_path()) SKIP("IMEXP_BIN not set");
    auto fam = random_commuting_family(71, 2, 1);
    ParamSet p;
    p.A = fam[0];
    const fs::path params = write_params(p, "imexp_cli_params_a.json");

    const fs::path out = fs::temp_directory_path() / "imexp_cli_eval.json";
    const RunResult r = run_cli("eval --function e-lower --x 1.0 --t 0.5+0.25i --params " +
                                params.string() + " -o " + out.string());
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(slurp(out));
    REQUIRE(doc.contains("value"));
    REQUIRE(doc.contains("terms_used"));
    REQUIRE(doc.contains("est_error"));
    const CMatrix value = matrix_from_json(doc["value"]);
    const EvalResult direct = e_lower(1.0, cxd{0.5, 0.25}, fam[0]);
    CHECK((value - direct.value).frobenius_norm() < 1e-13);
    CHECK(doc["terms_used"].get<int>() == direct.terms_used);
    // emitted matrices re-parse bit-identically
    CHECK(matrix_to_json(value).dump() == doc["value"].dump());
    fs::remove(params);
    fs::remove(out);
}

TEST_CASE("cli eval degenerate and error paths", "[cli]") {
    if (!cli_path()) SKIP("IMEXP_BIN not set");
    auto fam = random_commuting_family(73, 2, 1);
    ParamSet p;
    p.A = fam[0];
    const fs::path params = write_params(p, "imexp_cli_params_b.json");

    SECTION("t=0 reduces to the ratio coefficient") {
        const fs::path out = fs::temp_directory_path() / "imexp_cli_t0.json";
        const RunResult r = run_cli("eval --function e-lower --x 1.0 --t 0 --params " +
                                    params.string() + " -o " + out.string());
        REQUIRE(r.exit_code == 0);
        const CMatrix value = matrix_from_json(json::parse(slurp(out))["value"]);
        const CMatrix want = apply_scalar_function(fam[0], sf_reg_lower_gamma(1.0));
        CHECK((value - want).frobenius_norm() < 1e-12);
        fs::remove(out);
    }
    SECTION("malformed matrix file exits 2") {
        const fs::path bad = fs::temp_directory_path() / "imexp_cli_bad.json";
        std::ofstream(bad) << R"({"A": {"r": 2, "entries": [[[1,0],[2,0]]]}})";
        const RunResult r =
            run_cli("eval --function e-lower --x 1.0 --t 0.5 --params " + bad.string());
        CHECK(r.exit_code == 2);
        fs::remove(bad);
    }
    SECTION("missing file exits 2") {
        const RunResult r =
            run_cli("eval --function e-lower --x 1.0 --t 0.5 --params /nonexistent.json");
        CHECK(r.exit_code == 2);
    }
    SECTION("unknown function exits 2") {
        const RunResult r =
            run_cli("eval --function no-such --x 1.0 --t 0.5 --params " + params.string());
        CHECK(r.exit_code == 2);
    }
    SECTION("numerical failure exits 3") {
        // pFq with p = q+2 diverges
        ParamSet div;
        div.numerators = {fam[0], fam[0], fam[0]};
        div.denominators = {fam[0]};
        const fs::path dp = write_params(div, "imexp_cli_params_div.json");
        const RunResult r =
            run_cli("eval --function pfq --t 0.5 --params " + dp.string());
        CHECK(r.exit_code == 3);
        fs::remove(dp);
    }
    fs::remove(params);
}

TEST_CASE("cli verify and list-suites", "[cli]") {
    if (!cli_path()) SKIP("IMEXP_BIN not set");
    SECTION("listing carries the statement map and a stable count") {
        const RunResult r = run_cli("list-suites");
        REQUIRE(r.exit_code == 0);
        CHECK(r.output.find("gauss_value -> Theorem 5.14") != std::string::npos);
        CHECK(r.output.find("recurrence -> Theorem 5.15") != std::string::npos);
        CHECK(r.output.find("14 suites") != std::string::npos);
        const RunResult r2 = run_cli("list-suites");
        CHECK(r2.output == r.output);
    }
    SECTION("single-suite run writes a restricted report") {
        const fs::path rep = fs::temp_directory_path() / "imexp_cli_rep.json";
        const RunResult r = run_cli(
            "verify --suite decompositions --dims 1,2 --trials 3 --seed 5 --report " +
            rep.string());
        REQUIRE(r.exit_code == 0);
        const json doc = json::parse(slurp(rep));
        REQUIRE(doc["suites"].size() == 1);
        CHECK(doc["suites"][0]["suite"] == "decompositions");
        CHECK(doc["suites"][0]["cases"].size() == 3);
        fs::remove(rep);
    }
    SECTION("unknown suite exits 2") {
        CHECK(run_cli("verify --suite bogus --trials 1").exit_code == 2);
    }
    SECTION("reports are byte-identical aside from runtimes") {
        const fs::path rep1 = fs::temp_directory_path() / "imexp_cli_rep1.json";
        const fs::path rep2 = fs::temp_directory_path() / "imexp_cli_rep2.json";
        const std::string args =
            "verify --suite derivatives_s3,recurrence --dims 1,2,3 --trials 3 --seed 42 --report ";
        REQUIRE(run_cli(args + rep1.string()).exit_code == 0);
        REQUIRE(run_cli(args + rep2.string()).exit_code == 0);
        json a = json::parse(slurp(rep1));
        json b = json::parse(slurp(rep2));
        for (auto& s : a["suites"])
            for (auto& c : s["cases"]) c.erase("runtime_ms");
        for (auto& s : b["suites"])
            for (auto& c : s["cases"]) c.erase("runtime_ms");
        CHECK(a.dump() == b.dump());
        fs::remove(rep1);
        fs::remove(rep2);
    }
    SECTION("csv format emits one row per case") {
        const fs::path rep = fs::temp_directory_path() / "imexp_cli_rep.csv";
        const RunResult r = run_cli(
            "verify --suite recurrence --dims 1 --trials 2 --seed 7 --format csv --report " +
            rep.string());
        REQUIRE(r.exit_code == 0);
        const std::string csv = slurp(rep);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cases
        fs::remove(rep);
    }
    SECTION("IMEXP_SEED provides the default seed") {
        const fs::path rep = fs::temp_directory_path() / "imexp_cli_repseed.json";
        const std::string cmd = std::string("IMEXP_SEED=99 ") + cli_path() +
                                " verify --suite recurrence --dims 1 --trials 2 --report " +
                                rep.string() + " > /dev/null 2>&1";
        REQUIRE(std::system(cmd.c_str()) == 0);
        const json doc = json::parse(slurp(rep));
        CHECK(doc["config"]["seed"].get<std::uint64_t>() == 99);
        fs::remove(rep);
    }
}
