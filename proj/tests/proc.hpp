#pragma once

// Subprocess and scratch-file helpers for tests that drive the CLI binary.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "rojsr/matcore.hpp"

namespace testsup {

struct CmdResult {
    int code;
    std::string out;
};

inline std::string tool_path() {
    const char* p = std::getenv("JSRTOOL");
    if (p && *p) return p;
    return "./jsrtool";
}

// Runs through /bin/sh; `merge_stderr` folds diagnostics into the captured
// stream, otherwise they are dropped so byte-exact stdout checks stay clean.
inline CmdResult run_cmd(const std::string& cmd, bool merge_stderr = true) {
    std::string full = cmd + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed: " + full);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int rc = pclose(pipe);
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return {code, out};
}

inline std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "rojsr_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline void stream_matrix(std::ostream& os, const rojsr::Matrix& M) {
    os << "[";
    for (int i = 0; i < M.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < M.cols(); ++j) os << (j ? ", " : "") << M(i, j);
        os << "]";
    }
    os << "]";
}

// 17 significant digits so every double round-trips through the JSON parser.
inline std::string write_problem(const std::string& name, const rojsr::Matrix& S1,
                                 const rojsr::Matrix& S2, const std::string& label = "") {
    auto path = scratch_dir() / name;
    std::ofstream os(path);
    os << std::setprecision(17);
    os << "{\"d\": " << S1.rows() << ", \"S1\": ";
    stream_matrix(os, S1);
    os << ", \"S2\": ";
    stream_matrix(os, S2);
    if (!label.empty()) os << ", \"label\": \"" << label << "\"";
    os << "}\n";
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return path.string();
}

inline std::string write_text(const std::string& name, const std::string& body) {
    auto path = scratch_dir() / name;
    std::ofstream os(path);
    os << body;
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return path.string();
}

}  // namespace testsup
