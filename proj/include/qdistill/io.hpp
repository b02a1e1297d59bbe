// io.hpp — JSON serialization of operators (".qstate.json" files).
//
// Layout: {"dims": [dim_a, dim_b], "matrix": [[[re, im], ...], ...]}
// with the matrix written row-major in the basis convention of core.hpp.
// Doubles are written with shortest round-trip precision, so save followed
// by load reproduces every finite entry bit-for-bit.
//
// A map is exported as its Jamiolkowski operator D = d (1 ⊗ L)(P+) together
// with the convention tag "jamiolkowski_scale": d.

#pragma once

#include <string>

#include "qdistill/core.hpp"

namespace qdistill {

struct ChoiFile {
    BipartiteOperator op;
    int jamiolkowski_scale = 0;  // 0 when the file carried no scale tag
};

// Throws IoError on filesystem failure.
void save_state(const std::string& path, const BipartiteOperator& m);

// Throws IoError on filesystem failure, ParseError on malformed JSON or
// fields, DimensionMismatch when the matrix does not match "dims".
BipartiteOperator load_state(const std::string& path);

void save_choi(const std::string& path, const BipartiteOperator& choi, int scale);
ChoiFile load_choi(const std::string& path);

} // namespace qdistill
