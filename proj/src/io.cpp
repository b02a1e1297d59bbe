// io.cpp — JSON read/write for operators.

#include "qdistill/io.hpp"

#include <fstream>

#include "json.hpp"

namespace qdistill {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open for reading: " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_document(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << doc.dump(1) << '\n';
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

BipartiteOperator operator_from_json(const json& doc, const std::string& path) {
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
        throw ParseError(path + ": expected object with \"dims\" and \"matrix\"");
    }
    const json& dims = doc["dims"];
    if (!dims.is_array() || dims.size() != 2 ||
        !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
        throw ParseError(path + ": \"dims\" must be a pair of integers");
    }
    const int da = dims[0].get<int>();
    const int db = dims[1].get<int>();
    if (da < 1 || db < 1) {
        throw ParseError(path + ": \"dims\" entries must be positive");
    }
    const long side = static_cast<long>(da) * db;

    const json& rows = doc["matrix"];
    if (!rows.is_array()) {
        throw ParseError(path + ": \"matrix\" must be an array of rows");
    }
    if (static_cast<long>(rows.size()) != side) {
        throw DimensionMismatch(path + ": matrix has " +
                                std::to_string(rows.size()) + " rows, dims give " +
                                std::to_string(side));
    }
    Mat m(side, side);
    for (long r = 0; r < side; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || static_cast<long>(row.size()) != side) {
            throw DimensionMismatch(path + ": row " + std::to_string(r) +
                                    " length differs from " + std::to_string(side));
        }
        for (long c = 0; c < side; ++c) {
            const json& e = row[c];
            if (!e.is_array() || e.size() != 2 ||
                !e[0].is_number() || !e[1].is_number()) {
                throw ParseError(path + ": entry (" + std::to_string(r) + "," +
                                 std::to_string(c) + ") must be [re, im]");
            }
            m(r, c) = cxd(e[0].get<double>(), e[1].get<double>());
        }
    }
    return BipartiteOperator(da, db, std::move(m));
}

} // namespace

void save_state(const std::string& path, const BipartiteOperator& m) {
    json doc;
    doc["dims"] = {m.dim_a, m.dim_b};
    doc["matrix"] = matrix_to_json(m.mat);
    write_document(path, doc);
}

BipartiteOperator load_state(const std::string& path) {
    return operator_from_json(load_document(path), path);
}

void save_choi(const std::string& path, const BipartiteOperator& choi, int scale) {
    json doc;
    doc["dims"] = {choi.dim_a, choi.dim_b};
    doc["matrix"] = matrix_to_json(choi.mat);
    doc["jamiolkowski_scale"] = scale;
    write_document(path, doc);
}

ChoiFile load_choi(const std::string& path) {
    const json doc = load_document(path);
    ChoiFile f;
    f.op = operator_from_json(doc, path);
    if (doc.contains("jamiolkowski_scale")) {
        if (!doc["jamiolkowski_scale"].is_number_integer()) {
            throw ParseError(path + ": \"jamiolkowski_scale\" must be an integer");
        }
        f.jamiolkowski_scale = doc["jamiolkowski_scale"].get<int>();
    }
    return f;
}

} // namespace qdistill
