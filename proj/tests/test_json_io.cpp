#include <catch2/catch_amalgamated.hpp>

#include "imexp/json_io.hpp"
#include "imexp/random_family.hpp"

using namespace imexp;

TEST_CASE("matrix document round trip is bit exact", "[json]") {
    Rng rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = 1 + static_cast<int>(rng.next_u64() % 5);
        CMatrix m(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                m(i, j) = {rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)};
        const std::string text = matrix_to_json(m).dump();
        const CMatrix back = matrix_from_json(json::parse(text));
        CHECK(back == m);
        // a second pass through text stays byte-identical
        CHECK(matrix_to_json(back).dump() == text);
    }
}

TEST_CASE("matrix document validation", "[json]") {
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"entries": []})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"r": 0, "entries": []})")), ParseError);
    // non-square: row count mismatch
    CHECK_THROWS_AS(matrix_from_json(json::parse(
                        R"({"r": 2, "entries": [[[1,0],[2,0]]]})")),
                    ParseError);
    // non-square: row length mismatch
    CHECK_THROWS_AS(matrix_from_json(json::parse(
                        R"({"r": 2, "entries": [[[1,0]],[[2,0],[3,0]]]})")),
                    ParseError);
    // non-finite entry (built in memory; the text parser rejects such
    // numbers before this layer is reached)
    json inf_doc = json::parse(R"({"r": 1, "entries": [[[1,0]]]})");
    inf_doc["entries"][0][0][0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(matrix_from_json(inf_doc), ParseError);
    // malformed cell
    CHECK_THROWS_AS(matrix_from_json(json::parse(
                        R"({"r": 1, "entries": [[[1]]]})")),
                    ParseError);
}

TEST_CASE("parameter document round trip", "[json]") {
    auto fam = random_commuting_family(33, 2, 4);
    ParamSet p;
    p.A = fam[0];
    p.B = fam[1];
    p.numerators = {fam[2]};
    p.denominators = {fam[3]};
    const ParamSet back = paramset_from_json(paramset_to_json(p));
    CHECK(*back.A == *p.A);
    CHECK(*back.B == *p.B);
    REQUIRE(back.numerators.size() == 1);
    REQUIRE(back.denominators.size() == 1);
    CHECK(back.numerators[0] == p.numerators[0]);
    CHECK(back.denominators[0] == p.denominators[0]);

    const ParamSet empty = paramset_from_json(json::parse("{}"));
    CHECK_FALSE(empty.A.has_value());
    CHECK(empty.numerators.empty());
    CHECK_THROWS_AS(paramset_from_json(json::parse("[1,2]")), ParseError);
    CHECK_THROWS_AS(paramset_from_json(json::parse(R"({"E": 3})")), ParseError);
}
