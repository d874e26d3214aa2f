// End-to-end tests for the jsrtool binary. Every test here shells out to the
// real executable (path from the JSRTOOL env var) and checks exit codes and
// output text, so this suite covers the JSON parser, the CLI wiring, and the
// formatting contract rather than library internals.
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rojsr/jsr_bounds.hpp"
#include "test_support.hpp"
#include "proc.hpp"

using nlohmann::json;
using namespace testsup;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Scaled copy of the shear pair, written at full precision.
std::string scaled_shift_problem(const std::string& name, double c) {
    return write_problem(name, c * shift_s1(), c * shift_s2(), "scaled");
}

}  // namespace

TEST_CASE("cli: parse failures exit 2 and name the offending field") {
    const std::string tool = tool_path();

    SUBCASE("missing S2") {
        std::string path = write_text("missing_s2.json",
            "{\"d\": 2, \"S1\": [[1, 0], [1, 1]]}\n");
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 2);
        CHECK(contains(r.out, "S2"));
    }
    SUBCASE("d not a positive integer") {
        std::string path = write_text("bad_d.json",
            "{\"d\": 2.5, \"S1\": [[1, 0], [1, 1]], \"S2\": [[0, 1], [0, 0]]}\n");
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 2);
        CHECK(contains(r.out, "d"));
    }
    SUBCASE("row length mismatch names the row") {
        std::string path = write_text("short_row.json",
            "{\"d\": 2, \"S1\": [[1], [1, 1]], \"S2\": [[0, 1], [0, 0]]}\n");
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 2);
        CHECK(contains(r.out, "S1[0]"));
    }
    SUBCASE("non-numeric entry names the cell") {
        std::string path = write_text("bad_cell.json",
            "{\"d\": 2, \"S1\": [[1, \"x\"], [1, 1]], \"S2\": [[0, 1], [0, 0]]}\n");
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 2);
        CHECK(contains(r.out, "S1[0][1]"));
    }
    SUBCASE("broken JSON reports the document") {
        std::string path = write_text("broken.json", "{\"d\": 2, \"S1\": [[1,\n");
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 2);
        CHECK(contains(r.out, "document"));
    }
    SUBCASE("unreadable input file") {
        CmdResult r = run_cmd(tool + " exact /nonexistent/problem.json");
        CHECK(r.code == 2);
    }
}

TEST_CASE("cli: rank violations exit 3") {
    const std::string tool = tool_path();
    rojsr::Matrix I = rojsr::Matrix::Identity(2, 2);

    std::string both_full = write_problem("both_full.json", I, I, "identity pair");
    CmdResult r1 = run_cmd(tool_path() + " exact " + both_full);
    CHECK(r1.code == 3);

    rojsr::Matrix Z = rojsr::Matrix::Zero(2, 2);
    std::string both_zero = write_problem("both_zero.json", Z, Z, "zero pair");
    CmdResult r2 = run_cmd(tool + " exact " + both_zero);
    CHECK(r2.code == 3);
}

TEST_CASE("cli: exact on the shear pair, bounded and certified") {
    const std::string tool = tool_path();
    std::string path = write_problem("shear.json", shift_s1(), shift_s2(), "shear");

    SUBCASE("default run is bounded and says so") {
        CmdResult r = run_cmd(tool + " exact " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "rho = 1.31950791077"));
        CHECK(contains(r.out, "witness = (4,1)"));
        CHECK(contains(r.out, "word = 1^4 2^1"));
        CHECK(contains(r.out, "uncertified"));
    }
    SUBCASE("--certify upgrades to a certificate and exit 0") {
        CmdResult r = run_cmd(tool + " exact --certify " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "rho = 1.31950791077"));
        CHECK(contains(r.out, "certified"));
        CHECK_FALSE(contains(r.out, "uncertified"));
    }
    SUBCASE("--json emits a machine-readable result") {
        CmdResult r = run_cmd(tool + " exact --certify --json " + path, false);
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(std::abs(doc["value"].get<double>() - 1.3195079107728942) < 1e-12);
        CHECK(doc["witness"]["kind"] == "pair");
        CHECK(doc["witness"]["ell"] == 4);
        CHECK(doc["witness"]["m"] == 1);
        CHECK(doc["certified"] == true);
        CHECK(doc["gap"].get<double>() <= 1e-9 * 1.0001);
        CHECK(doc["word"] == "1^4 2^1");
        CHECK(doc["roles_swapped"] == false);
        CHECK(doc["label"] == "shear");

        // Independent route: the reported value must sit inside the
        // brute-force sandwich computed in-process.
        rojsr::bounds::SandwichReport rep = rojsr::bounds::sandwich_check(
            {shift_s1(), shift_s2()}, doc["value"].get<double>(), 8);
        CHECK(rep.lower <= rep.exact + 1e-9);
        CHECK(rep.exact <= rep.upper + 1e-9);
    }
    SUBCASE("--lmax truncates the scan") {
        CmdResult r = run_cmd(tool + " exact --lmax 3 " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "rho = 1.31607401295"));
        CHECK(contains(r.out, "witness = (3,1)"));
    }
    SUBCASE("problem on stdin") {
        CmdResult r = run_cmd(tool + " exact - < " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "rho = 1.31950791077"));
    }
}

TEST_CASE("cli: swapped roles are reported through the word") {
    const std::string tool = tool_path();

    // Rank-one matrix first: the solver swaps internally, the word uses the
    // caller's labels.
    std::string path = write_problem("swapped.json", shift_s2(), shift_s1(), "swapped");
    CmdResult r = run_cmd(tool + " exact --json " + path, false);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["roles_swapped"] == true);
    CHECK(doc["word"] == "2^4 1^1");
    CHECK(std::abs(doc["value"].get<double>() - 1.3195079107728942) < 1e-12);
}

TEST_CASE("cli: degenerate zero factor keeps exit 0") {
    const std::string tool = tool_path();
    std::string path = write_problem("zero_s2.json", shift_s1(), rojsr::Matrix::Zero(2, 2),
                                     "zero second");
    CmdResult r = run_cmd(tool + " exact --certify --json " + path, false);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["witness"]["kind"] == "pure_s1");
    CHECK(doc["word"] == "1");
    CHECK(std::abs(doc["value"].get<double>() - 1.0) < 1e-12);
    CHECK(doc["certified"] == true);
}

TEST_CASE("cli: certification budget exhaustion exits 4") {
    const std::string tool = tool_path();
    rojsr::Matrix S1 = make2(1, 1, 0, 1);  // Jordan block, radius 1, non-diagonalizable
    rojsr::Matrix S2 = make2(0, 0.1, 0, 0);
    std::string path = write_problem("slow.json", S1, S2, "slow certificate");
    CmdResult r = run_cmd(tool + " exact --certify --lmax 150 " + path);
    CHECK(r.code == 4);
    CHECK(contains(r.out, "uncertified"));
}

TEST_CASE("cli: stability verdicts map to exit codes") {
    const std::string tool = tool_path();
    const double root = 1.3195079107728942;  // 4^{1/5}

    SUBCASE("contractive scaling is Stable, exit 0") {
        std::string path = scaled_shift_problem("stable.json", 0.95 / root);
        CmdResult r = run_cmd(tool + " stability " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "Stable"));
        CHECK(contains(r.out, "certified"));
    }
    SUBCASE("expansive scaling is Unstable, exit 10") {
        std::string path = scaled_shift_problem("unstable.json", 1.05 / root);
        CmdResult r = run_cmd(tool + " stability " + path);
        CHECK(r.code == 10);
        CHECK(contains(r.out, "Unstable"));
    }
    SUBCASE("critical scaling is Marginal, exit 11") {
        std::string path = scaled_shift_problem("marginal.json", 1.0 / root);
        CmdResult r = run_cmd(tool + " stability " + path);
        CHECK(r.code == 11);
        CHECK(contains(r.out, "Marginal"));
    }
}

TEST_CASE("cli: bounds subcommand") {
    const std::string tool = tool_path();
    std::string path = write_problem("bounds.json", shift_s1(), shift_s2(), "shear");

    SUBCASE("depth 5 pins the known lower bound and argmax") {
        CmdResult r = run_cmd(tool + " bounds --depth 5 " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "lower = 1.31950791077"));
        CHECK(contains(r.out, "argmax = 11112"));
        CHECK(contains(r.out, "norm = two"));
    }
    SUBCASE("json output brackets the exact value") {
        CmdResult r = run_cmd(tool + " bounds --depth 6 --json " + path, false);
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        double lo = doc["lower"].get<double>();
        double up = doc["upper"].get<double>();
        CHECK(lo <= 1.3195079107728942 + 1e-12);
        CHECK(up >= 1.3195079107728942 - 1e-12);
        CHECK(doc["depth"] == 6);
    }
    SUBCASE("excessive depth trips the budget, exit 5") {
        CmdResult r = run_cmd(tool + " bounds --depth 23 " + path);
        CHECK(r.code == 5);
    }
    SUBCASE("frobenius norm is selectable") {
        CmdResult r = run_cmd(tool + " bounds --depth 4 --norm frobenius " + path);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "norm = frobenius"));
    }
    SUBCASE("unknown norm is a usage error") {
        CmdResult r = run_cmd(tool + " bounds --norm junk " + path);
        CHECK(r.code == 2);
    }
}

TEST_CASE("cli: sweep emits deterministic CSV") {
    const std::string tool = tool_path();
    std::string path = write_problem("sweep.json", shift_s1(), shift_s2(), "shear");

    SUBCASE("lmax 6 layout") {
        CmdResult r = run_cmd(tool + " sweep --lmax 6 " + path, false);
        REQUIRE(r.code == 0);
        CHECK_FALSE(contains(r.out, "\r"));

        std::istringstream lines(r.out);
        std::string line;
        REQUIRE(std::getline(lines, line));
        CHECK(line == "ell,m,value");

        int rows = 0;
        int best_ell = -1;
        double best = -1.0;
        while (std::getline(lines, line)) {
            REQUIRE(!line.empty());
            int ell = 0, m = 0;
            double value = 0.0;
            REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf", &ell, &m, &value) == 3);
            CHECK(ell == rows);  // ascending ell, one row per ell at m=1
            CHECK(m == 1);
            if (value > best) { best = value; best_ell = ell; }
            ++rows;
        }
        CHECK(rows == 7);
        CHECK(best_ell == 4);
        CHECK(best == doctest::Approx(1.3195079107728942).epsilon(1e-12));

        // Deterministic byte-for-byte across runs.
        CmdResult r2 = run_cmd(tool + " sweep --lmax 6 " + path, false);
        CHECK(r2.out == r.out);
    }
    SUBCASE("lmax 0 yields the single scalar row") {
        CmdResult r = run_cmd(tool + " sweep --lmax 0 " + path, false);
        REQUIRE(r.code == 0);
        CHECK(r.out == "ell,m,value\n0,1,0\n");
    }
    SUBCASE("--out writes the same bytes as stdout") {
        std::string csv = (scratch_dir() / "sweep_out.csv").string();
        CmdResult to_file = run_cmd(tool + " sweep --lmax 6 --out " + csv + " " + path, false);
        REQUIRE(to_file.code == 0);
        CmdResult to_stdout = run_cmd(tool + " sweep --lmax 6 " + path, false);
        CHECK(slurp(csv) == to_stdout.out);
    }
    SUBCASE("unwritable --out exits 2") {
        CmdResult r = run_cmd(tool + " sweep --lmax 6 --out /nonexistent/dir/x.csv " + path);
        CHECK(r.code == 2);
    }
}

TEST_CASE("cli: demo self-check") {
    const std::string tool = tool_path();

    SUBCASE("all built-in cases pass") {
        CmdResult r = run_cmd(tool + " demo");
        CHECK(r.code == 0);
        CHECK(contains(r.out, "demo: 4/4 PASS"));
        CHECK_FALSE(contains(r.out, "FAIL"));
        // The hidden-optimum case reports the short scan falling below 1.
        CHECK(contains(r.out, "short-scan 0.991372867335"));
    }
    SUBCASE("json form counts passes") {
        CmdResult r = run_cmd(tool + " demo --json", false);
        REQUIRE(r.code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["passed"] == 4);
        CHECK(doc["total"] == 4);
    }
    SUBCASE("injected fault is caught, exit 4") {
        CmdResult r = run_cmd(tool + " demo --inject-fault");
        CHECK(r.code == 4);
        CHECK(contains(r.out, "FAIL"));
    }
}

TEST_CASE("cli: usage errors and help") {
    const std::string tool = tool_path();
    CHECK(run_cmd(tool + " --help").code == 0);
    CHECK(run_cmd(tool).code == 2);
    CHECK(run_cmd(tool + " exact --no-such-flag x.json").code == 2);
    CHECK(run_cmd(tool + " frobnicate x.json").code == 2);
}
