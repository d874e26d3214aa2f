// jsrtool: exact radius, brute-force bounds, stability verdicts, and candidate
// sweeps for pairs of square matrices where one factor has rank one.
//
// Exit codes: 0 success (or verdict Stable), 2 invalid input or I/O failure,
// 3 rank requirement violated, 4 verification failed (--certify budget
// exhausted, or a demo case mismatch), 5 enumeration budget exceeded,
// 10 verdict Unstable, 11 verdict Marginal.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rojsr/jsr_bounds.hpp"
#include "rojsr/problem_io.hpp"
#include "rojsr/rankone_jsr.hpp"
#include "rojsr/stability.hpp"

namespace {

using nlohmann::json;
using namespace rojsr;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitRank = 3;
constexpr int kExitUnverified = 4;
constexpr int kExitBudget = 5;
constexpr int kExitUnstable = 10;
constexpr int kExitMarginal = 11;

std::string fmt12(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string witness_pair_text(const ExactJsrResult& r) {
    const int first = r.roles_swapped ? 2 : 1;
    const int second = r.roles_swapped ? 1 : 2;
    std::ostringstream os;
    os << first << "^" << r.witness.pair.ell << " " << second << "^" << r.witness.pair.m;
    return os.str();
}

std::string witness_text(const ExactJsrResult& r) {
    switch (r.witness.kind) {
    case WitnessKind::PureS1:
        return "PureS1";
    case WitnessKind::PureS2:
        return "PureS2";
    case WitnessKind::Pair:
        break;
    }
    std::ostringstream os;
    os << "(" << r.witness.pair.ell << "," << r.witness.pair.m << ")";
    return os.str();
}

std::string word_text(const ExactJsrResult& r) {
    switch (r.witness.kind) {
    case WitnessKind::PureS1:
        return "1";
    case WitnessKind::PureS2:
        return "2";
    case WitnessKind::Pair:
        return witness_pair_text(r);
    }
    return "";
}

json witness_json(const ExactJsrResult& r) {
    json w;
    switch (r.witness.kind) {
    case WitnessKind::PureS1:
        w["kind"] = "pure_s1";
        break;
    case WitnessKind::PureS2:
        w["kind"] = "pure_s2";
        break;
    case WitnessKind::Pair:
        w["kind"] = "pair";
        w["ell"] = r.witness.pair.ell;
        w["m"] = r.witness.pair.m;
        break;
    }
    return w;
}

json result_json(const ExactJsrResult& r, const std::string& label) {
    json j;
    j["value"] = r.value;
    j["witness"] = witness_json(r);
    j["word"] = word_text(r);
    j["certified"] = r.certified;
    j["gap"] = r.gap;
    j["explored_ell_max"] = r.explored_ell_max;
    j["roles_swapped"] = r.roles_swapped;
    j["label"] = label;
    return j;
}

int run_exact(const std::string& file, bool certify, double tol, long lmax, long mmax,
              bool as_json) {
    io::Problem p = io::load_problem(file);
    RankOnePairSolver solver(p.S1, p.S2);
    ExactJsrResult res;
    if (certify)
        res = solver.solve_certified(tol, lmax < 0 ? 20000 : lmax);
    else
        res = solver.solve_bounded(lmax < 0 ? 100 : lmax, mmax);

    if (as_json) {
        std::cout << result_json(res, p.label).dump() << "\n";
    } else {
        std::cout << "rho = " << fmt12(res.value) << " witness = " << witness_text(res)
                  << " word = " << word_text(res) << (res.certified ? " certified" : " uncertified")
                  << "\n";
    }
    if (certify && !res.certified) {
        std::cerr << "exact: certification budget exhausted at ell = " << res.explored_ell_max
                  << "; value is a lower estimate only\n";
        return kExitUnverified;
    }
    return kExitOk;
}

int run_bounds(const std::string& file, int depth, const std::string& norm, bool as_json) {
    io::Problem p = io::load_problem(file);
    const bounds::NormKind nk =
        norm == "frobenius" ? bounds::NormKind::Frobenius : bounds::NormKind::Two;
    bounds::BoundsResult b = bounds::compute_bounds({p.S1, p.S2}, depth, nk);
    if (as_json) {
        json j;
        j["lower"] = b.lower;
        j["upper"] = b.upper;
        j["depth"] = b.depth;
        j["argmax_word"] = b.argmax_word.str();
        j["norm"] = b.norm_id;
        j["label"] = p.label;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "lower = " << fmt12(b.lower) << " upper = " << fmt12(b.upper)
                  << " depth = " << b.depth << " argmax = " << b.argmax_word.str()
                  << " norm = " << b.norm_id << "\n";
    }
    return kExitOk;
}

int run_stability(const std::string& file, double tol, bool as_json) {
    io::Problem p = io::load_problem(file);
    stability::StabilityVerdict v = stability::decide_stability(p.S1, p.S2, tol);
    if (as_json) {
        json j;
        j["verdict"] = stability::class_name(v.cls);
        j["rho"] = v.rho;
        j["band"] = v.band;
        j["certified"] = v.certificate.certified;
        j["witness"] = witness_json(v.certificate);
        j["label"] = p.label;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "verdict = " << stability::class_name(v.cls) << " rho = " << fmt12(v.rho)
                  << " band = " << v.band
                  << (v.certificate.certified ? " certified" : " uncertified") << "\n";
    }
    switch (v.cls) {
    case stability::StabilityClass::Stable:
        return kExitOk;
    case stability::StabilityClass::Unstable:
        return kExitUnstable;
    case stability::StabilityClass::Marginal:
        return kExitMarginal;
    }
    return kExitMarginal;
}

int run_sweep(const std::string& file, long lmax, long mmax, const std::string& out) {
    io::Problem p = io::load_problem(file);
    RankOnePairSolver solver(p.S1, p.S2);
    if (out == "-") {
        io::write_sweep_csv(std::cout, solver, lmax, mmax);
    } else {
        std::ofstream f(out);
        if (!f)
            throw ParseError("out", "sweep: cannot open \"" + out + "\" for writing");
        io::write_sweep_csv(f, solver, lmax, mmax);
        if (!f.good())
            throw ParseError("out", "sweep: write to \"" + out + "\" failed");
    }
    return kExitOk;
}

struct DemoCase {
    int index;
    Matrix S1;
    Matrix S2;
    double reference;
    double tolerance;
    PowerPair expect;
    bool hidden_optimum; // also verify that a short scan stays below 1
};

std::vector<DemoCase> demo_cases() {
    const double is2 = 1.0 / std::sqrt(2.0);
    const double s32 = std::sqrt(3.0) / 2.0;
    std::vector<DemoCase> cs;

    Matrix a1(2, 2), a2(2, 2);
    a1 << 1, 0, 1, 1;
    a2 << 0, 1, 0, 0;
    cs.push_back({1, a1, a2, 1.3195079107728942, 1e-10, {4, 1}, false});

    Matrix b1(2, 2), b2(2, 2);
    b1 << 1, is2, 0, 1;
    b2 << 1, s32, -1, -s32;
    cs.push_back({2, b1, b2, 1.226346, 5e-6, {5, 1}, false});

    Matrix c2(2, 2);
    c2 << 0, 0, -is2, 1;
    cs.push_back({3, b1, c2, 1.134313, 5e-6, {10, 1}, false});

    Matrix d1(2, 2), d2(2, 2);
    d1 << 1, 1.0 / 11.0, 0, 1;
    d2 << 1, -1, 1, -1;
    cs.push_back({4, d1, d2, 1.0329077393780195, 1e-9, {31, 1}, true});

    return cs;
}

int run_demo(bool as_json, bool inject_fault) {
    int passed = 0;
    json records = json::array();
    std::ostringstream text;

    const auto cases = demo_cases();
    for (const DemoCase& dc : cases) {
        RankOnePairSolver solver(dc.S1, dc.S2);
        ExactJsrResult res = solver.solve_certified(1e-9, 20000);
        double computed = res.value;
        double short_scan = 0.0;
        if (inject_fault)
            computed *= 1.5;

        bool pass = std::abs(computed - dc.reference) <= dc.tolerance;
        pass = pass && res.certified;
        pass = pass && res.witness.kind == WitnessKind::Pair && res.witness.pair == dc.expect &&
               !res.roles_swapped;
        if (dc.hidden_optimum) {
            short_scan = solver.solve_bounded(10, 1).value;
            pass = pass && short_scan < 1.0 && computed >= 1.0;
        }
        if (pass)
            ++passed;

        text << "case " << dc.index << ":";
        if (dc.hidden_optimum)
            text << " short-scan " << fmt12(short_scan);
        text << " computed " << fmt12(computed) << " reference " << fmt12(dc.reference)
             << " witness " << word_text(res) << (pass ? " PASS" : " FAIL") << "\n";

        json rec;
        rec["case"] = dc.index;
        rec["computed"] = computed;
        rec["reference"] = dc.reference;
        rec["tolerance"] = dc.tolerance;
        rec["witness"] = witness_json(res);
        rec["word"] = word_text(res);
        rec["certified"] = res.certified;
        if (dc.hidden_optimum)
            rec["short_scan"] = short_scan;
        rec["pass"] = pass;
        records.push_back(rec);
    }

    const int total = static_cast<int>(cases.size());
    if (as_json) {
        json j;
        j["cases"] = records;
        j["passed"] = passed;
        j["total"] = total;
        std::cout << j.dump() << "\n";
    } else {
        text << "demo: " << passed << "/" << total << " PASS\n";
        std::cout << text.str();
    }
    return passed == total ? kExitOk : kExitUnverified;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact joint spectral radius toolkit for rank-one matrix pairs"};
    app.require_subcommand(1);

    auto* cmd_exact = app.add_subcommand("exact", "Exact radius of the pair");
    std::string exact_file = "-";
    double exact_tol = 1e-9;
    bool exact_certify = false;
    long exact_lmax = -1;
    long exact_mmax = 1;
    bool exact_json = false;
    cmd_exact->add_option("file", exact_file, "problem JSON file, \"-\" for stdin");
    cmd_exact->add_option("--tol", exact_tol, "certification tolerance (default 1e-9)");
    cmd_exact->add_flag("--certify", exact_certify, "run until the result is certified");
    cmd_exact->add_option("--lmax", exact_lmax,
                          "power scan limit (default 100; certify budget default 20000)");
    cmd_exact->add_option("--mmax", exact_mmax, "rank-one power limit for the scan (default 1)");
    cmd_exact->add_flag("--json", exact_json, "machine-readable output");

    auto* cmd_bounds = app.add_subcommand("bounds", "Brute-force lower/upper bounds");
    std::string bounds_file = "-";
    int bounds_depth = 8;
    std::string bounds_norm = "two";
    bool bounds_json = false;
    cmd_bounds->add_option("file", bounds_file, "problem JSON file, \"-\" for stdin");
    cmd_bounds->add_option("--depth", bounds_depth, "max word length (default 8)");
    cmd_bounds->add_option("--norm", bounds_norm, "norm for the upper bound")
        ->check(CLI::IsMember({"two", "frobenius"}));
    cmd_bounds->add_flag("--json", bounds_json, "machine-readable output");

    auto* cmd_stab = app.add_subcommand("stability", "Switched-system stability verdict");
    std::string stab_file = "-";
    double stab_tol = 1e-9;
    bool stab_json = false;
    cmd_stab->add_option("file", stab_file, "problem JSON file, \"-\" for stdin");
    cmd_stab->add_option("--tol", stab_tol, "marginal band half-width (default 1e-9)");
    cmd_stab->add_flag("--json", stab_json, "machine-readable output");

    auto* cmd_sweep = app.add_subcommand("sweep", "Candidate-value sweep as CSV");
    std::string sweep_file = "-";
    long sweep_lmax = 20;
    long sweep_mmax = 1;
    std::string sweep_out = "-";
    cmd_sweep->add_option("file", sweep_file, "problem JSON file, \"-\" for stdin");
    cmd_sweep->add_option("--lmax", sweep_lmax, "largest ell (default 20)");
    cmd_sweep->add_option("--mmax", sweep_mmax, "largest m (default 1)");
    cmd_sweep->add_option("--out", sweep_out, "output path, \"-\" for stdout");

    auto* cmd_demo = app.add_subcommand("demo", "Built-in reference pairs with PASS/FAIL checks");
    bool demo_json = false;
    bool demo_fault = false;
    cmd_demo->add_flag("--json", demo_json, "machine-readable output");
    cmd_demo->add_flag("--inject-fault", demo_fault, "perturb computed values (test harness)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*cmd_exact)
            return run_exact(exact_file, exact_certify, exact_tol, exact_lmax, exact_mmax,
                             exact_json);
        if (*cmd_bounds)
            return run_bounds(bounds_file, bounds_depth, bounds_norm, bounds_json);
        if (*cmd_stab)
            return run_stability(stab_file, stab_tol, stab_json);
        if (*cmd_sweep)
            return run_sweep(sweep_file, sweep_lmax, sweep_mmax, sweep_out);
        if (*cmd_demo)
            return run_demo(demo_json, demo_fault);
    } catch (const ParseError& e) {
        std::cerr << "error [" << e.field << "]: " << e.what() << "\n";
        return kExitParse;
    } catch (const RankTooHigh& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRank;
    } catch (const ZeroMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRank;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
