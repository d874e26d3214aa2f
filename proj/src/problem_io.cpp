#include "rojsr/problem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rojsr::io {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, const std::string& name, int d) {
    if (!j.contains(name))
        throw ParseError(name, "problem file: missing field \"" + name + "\"");
    const json& rows = j.at(name);
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw ParseError(name, "problem file: \"" + name + "\" must be an array of " +
                                   std::to_string(d) + " rows");
    Matrix M(d, d);
    for (int i = 0; i < d; ++i) {
        const json& row = rows.at(i);
        const std::string rowname = name + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw ParseError(rowname, "problem file: " + rowname + " must be an array of " +
                                          std::to_string(d) + " numbers");
        for (int k = 0; k < d; ++k) {
            const json& e = row.at(k);
            const std::string ename =
                name + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
            if (!e.is_number())
                throw ParseError(ename, "problem file: " + ename + " must be a number");
            const double val = e.get<double>();
            if (!std::isfinite(val))
                throw ParseError(ename, "problem file: " + ename + " must be finite");
            M(i, k) = val;
        }
    }
    return M;
}

} // namespace

Problem parse_problem(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("document", std::string("problem file: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("document", "problem file: top level must be an object");

    if (!j.contains("d"))
        throw ParseError("d", "problem file: missing field \"d\"");
    if (!j.at("d").is_number_integer())
        throw ParseError("d", "problem file: \"d\" must be an integer");
    const long d = j.at("d").get<long>();
    if (d < 1 || d > 64)
        throw ParseError("d", "problem file: \"d\" must be in [1, 64], got " + std::to_string(d));

    Problem p;
    p.d = static_cast<int>(d);
    p.S1 = parse_matrix(j, "S1", p.d);
    p.S2 = parse_matrix(j, "S2", p.d);
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw ParseError("label", "problem file: \"label\" must be a string");
        p.label = j.at("label").get<std::string>();
    }
    return p;
}

Problem load_problem(const std::string& path) {
    if (path == "-")
        return parse_problem(std::cin);
    std::ifstream f(path);
    if (!f)
        throw ParseError("file", "problem file: cannot open \"" + path + "\"");
    return parse_problem(f);
}

void write_sweep_csv(std::ostream& out, const RankOnePairSolver& solver, long ell_max,
                     long m_max) {
    if (ell_max < 0)
        throw std::invalid_argument("write_sweep_csv: ell_max must be >= 0");
    if (m_max < 1)
        throw std::invalid_argument("write_sweep_csv: m_max must be >= 1");
    out << "ell,m,value\n";
    char buf[64];
    for (long ell = 0; ell <= ell_max; ++ell) {
        for (long m = 1; m <= m_max; ++m) {
            const double v = solver.candidate_value(PowerPair{ell, m});
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ell << ',' << m << ',' << buf << '\n';
        }
    }
}

} // namespace rojsr::io
