#pragma once

// Problem-file handling for the CLI: a problem is a JSON document
//   {"d": 2, "S1": [[...],[...]], "S2": [[...],[...]], "label": "optional"}
// with d x d row-major numeric matrices.  Validation failures throw ParseError
// naming the offending field.

#include <iosfwd>
#include <string>

#include "rojsr/rankone_jsr.hpp"

namespace rojsr::io {

struct Problem {
    int d = 0;
    Matrix S1;
    Matrix S2;
    std::string label;
};

Problem parse_problem(std::istream& in);

/// Reads from the path, or from standard input when path is "-".
Problem load_problem(const std::string& path);

/// Candidate-value sweep as CSV: header "ell,m,value", one row per (ell, m)
/// with ell ascending then m ascending, values at full double precision, LF
/// line endings.  Byte-identical across runs on the same input.
void write_sweep_csv(std::ostream& out, const RankOnePairSolver& solver, long ell_max,
                     long m_max);

} // namespace rojsr::io
