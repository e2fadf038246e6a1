#pragma once

#include <string>

#include <json.hpp>

#include "imexp/hyperseries.hpp"

namespace imexp {

using json = nlohmann::ordered_json;

/// {"r": n, "entries": [[[re,im], ...], ...]}, row-major.
inline json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"r", m.dim()}, {"entries", std::move(rows)}};
}

inline CMatrix matrix_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("r") || !doc.contains("entries"))
        throw ParseError("matrix document must carry \"r\" and \"entries\"");
    if (!doc["r"].is_number_integer()) throw ParseError("\"r\" must be an integer");
    const int r = doc["r"].get<int>();
    if (r < 1) throw ParseError("matrix dimension must be >= 1");
    const json& rows = doc["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != r)
        throw ParseError("\"entries\" must hold exactly r rows");
    CMatrix m(r);
    for (int i = 0; i < r; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != r)
            throw ParseError("matrix row has wrong length (non-square data)");
        for (int j = 0; j < r; ++j) {
            const json& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw ParseError("matrix entry must be a [re, im] pair of numbers");
            const double re = cell[0].get<double>();
            const double im = cell[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ParseError("matrix entries must be finite");
            m(i, j) = {re, im};
        }
    }
    return m;
}

/// {"A": mat?, "B": mat?, "E": [mat...]?, "F": [mat...]?}
inline json paramset_to_json(const ParamSet& p) {
    json doc = json::object();
    if (p.A) doc["A"] = matrix_to_json(*p.A);
    if (p.B) doc["B"] = matrix_to_json(*p.B);
    json e = json::array();
    for (const auto& m : p.numerators) e.push_back(matrix_to_json(m));
    doc["E"] = std::move(e);
    json f = json::array();
    for (const auto& m : p.denominators) f.push_back(matrix_to_json(m));
    doc["F"] = std::move(f);
    return doc;
}

inline ParamSet paramset_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("parameter document must be a JSON object");
    ParamSet p;
    if (doc.contains("A") && !doc["A"].is_null()) p.A = matrix_from_json(doc["A"]);
    if (doc.contains("B") && !doc["B"].is_null()) p.B = matrix_from_json(doc["B"]);
    if (doc.contains("E")) {
        if (!doc["E"].is_array()) throw ParseError("\"E\" must be an array of matrices");
        for (const auto& m : doc["E"]) p.numerators.push_back(matrix_from_json(m));
    }
    if (doc.contains("F")) {
        if (!doc["F"].is_array()) throw ParseError("\"F\" must be an array of matrices");
        for (const auto& m : doc["F"]) p.denominators.push_back(matrix_from_json(m));
    }
    return p;
}

inline json eval_result_to_json(const CMatrix& value, int terms_used, double est_error) {
    return json{{"value", matrix_to_json(value)},
                {"terms_used", terms_used},
                {"est_error", est_error}};
}

}  // namespace imexp
