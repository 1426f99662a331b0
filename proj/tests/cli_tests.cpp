// Exercises the nradius executable end to end: output schemas, exit codes,
// and file round-trips.  argv[1] is the path to the binary under test.

#include "nr/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nr::Json;

namespace {

int g_failures = 0;
std::string g_bin;
fs::path g_dir;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "  ok: " << what << "\n";
    } else {
        ++g_failures;
        std::cout << "  FAILED: " << what << "\n";
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

/// run the binary with stdout captured to a file; stderr flows to the test log
RunResult run(const std::string& args) {
    const fs::path out_path = g_dir / "stdout.txt";
    const std::string cmd = g_bin + " " + args + " > " + out_path.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string write_j2() {
    nr::Matrix j2(2, 2);
    j2 << 0, 1, 0, 0;
    const fs::path p = g_dir / "j2.json";
    nr::write_matrix_file(p.string(), j2);
    return p.string();
}

void test_compute() {
    std::cout << "compute:\n";
    const std::string j2 = write_j2();

    RunResult w = run("compute w " + j2);
    check(w.exit_code == 0, "compute w exits 0");
    const Json jw = Json::parse(w.out);
    check(std::abs(jw.at("value").get<double>() - 0.5) <= 1e-9, "w(J2) = 0.5 within 1e-9");
    check(jw.at("error_radius").get<double>() <= 1e-9, "certified radius within default tol");

    RunResult nrm = run("compute norm " + j2);
    const Json jn = Json::parse(nrm.out);
    check(std::abs(jn.at("value").get<double>() - 1.0) <= 1e-12, "norm(J2) = 1");

    RunResult al = run("compute aluthge " + j2 + " --t 0.5");
    check(al.exit_code == 0, "compute aluthge exits 0");
    const nr::Matrix back = nr::matrix_from_json(Json::parse(al.out));
    check(back.rows() == 2 && back.cols() == 2, "aluthge output parses as a matrix");
    check(nr::fro_norm(back) < 1e-12, "Aluthge transform of J2 is the zero matrix");

    RunResult pol = run("compute polar " + j2);
    const Json jp = Json::parse(pol.out);
    const nr::Matrix u = nr::matrix_from_json(jp.at("isometry"));
    const nr::Matrix p = nr::matrix_from_json(jp.at("positive"));
    nr::Matrix j2m(2, 2);
    j2m << 0, 1, 0, 0;
    check(nr::fro_norm(u * p - j2m) < 1e-12, "polar factors reconstruct the input");

    // round-trip: feed the aluthge output matrix back through compute
    const fs::path round = g_dir / "round.json";
    std::ofstream(round) << al.out;
    RunResult again = run("compute norm " + round.string());
    check(again.exit_code == 0, "matrix written by the CLI re-reads losslessly");
    check(Json::parse(again.out).at("value").get<double>() < 1e-12, "zero matrix has zero norm");

    // --out writes the same document to a file instead of stdout
    const fs::path outfile = g_dir / "w_out.json";
    RunResult via_out = run("compute w " + j2 + " --out " + outfile.string());
    check(via_out.exit_code == 0 && via_out.out.empty(), "--out suppresses stdout payload");
    std::ifstream fin(outfile);
    std::stringstream fss;
    fss << fin.rdbuf();
    check(fss.str() == w.out, "--out file matches the stdout payload");
}

void test_exit_codes() {
    std::cout << "exit codes:\n";
    const std::string j2 = write_j2();

    check(run("compute aluthge " + j2).exit_code == 2, "aluthge without --t exits 2");
    check(run("compute w /nonexistent.json").exit_code == 2, "missing input file exits 2");

    const fs::path bad = g_dir / "bad.json";
    std::ofstream(bad) << "{\"rows\": 2, \"cols\": 2, \"data\": [[1,0]]}";
    check(run("compute w " + bad.string()).exit_code == 2, "malformed matrix exits 2");

    check(run("check --entry NOPE --trials 2 --dims 2").exit_code == 2, "unknown entry exits 2");
    check(run("search EQ-equiv-lo --budget 0 --dims 2").exit_code == 2, "budget 0 exits 2");
    check(run("sweep --entry EQ-equiv-hi --trials 2 --dims 2").exit_code == 2,
          "sweep on an entry without a t parameter exits 2");
    check(run("sweep --entry C-wAB --trials 2 --dims 2 --t 1.5").exit_code == 2,
          "sweep with t outside [0,1] exits 2");
    check(run("check --entry R-zero --family gaussian --trials 2 --dims 2").exit_code == 2,
          "explicitly incompatible entry/family pairing exits 2");
    check(run("compute w " + j2 + " --tol -1").exit_code == 2, "negative tolerance exits 2");
}

void test_list() {
    std::cout << "list:\n";
    RunResult r = run("list");
    check(r.exit_code == 0, "list exits 0");
    int lines = 0;
    bool has_anchor = true, has_product_entry = false;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        const Json j = Json::parse(line);
        if (j.at("anchor").get<std::string>().empty()) has_anchor = false;
        if (j.at("id") == "L1.1a-eq10") has_product_entry = true;
    }
    check(lines == 35, "registry prints 35 entries");
    check(has_anchor, "every entry carries its anchor");
    check(has_product_entry, "product bound is registered");
}

void test_check() {
    std::cout << "check:\n";
    RunResult r = run("check --entry EQ-equiv-hi --entry R-zero --trials 6 --dims 2 "
                      "--seed 9 2>/dev/null");
    check(r.exit_code == 0, "clean subset run exits 0");
    const Json j = Json::parse(r.out);
    check(j.at("summary").at("violations") == 0, "no violations in summary");
    check(j.at("summary").at("entries") == 2, "two entries covered");
    bool all_fields = true;
    for (const auto& rep : j.at("reports")) {
        if (!rep.contains("entry") || !rep.contains("spec") || !rep.contains("min_margin") ||
            !rep.contains("quantiles") || !rep.contains("violations"))
            all_fields = false;
    }
    check(all_fields, "reports carry the full schema");

    // csv format
    RunResult c = run("check --entry EQ-equiv-hi --trials 4 --dims 2..3 --format csv "
                      "2>/dev/null");
    check(c.exit_code == 0, "csv run exits 0");
    check(c.out.rfind("entry,family,dim,seed,scale,trials,", 0) == 0, "csv header present");

    // determinism: identical flags, byte-identical output apart from runtime_ms
    RunResult d1 = run("check --entry L1.1c --trials 5 --dims 2 2>/dev/null");
    RunResult d2 = run("check --entry L1.1c --trials 5 --dims 2 2>/dev/null");
    auto strip = [](const std::string& s) {
        std::istringstream in(s);
        std::string line, kept;
        while (std::getline(in, line))
            if (line.find("runtime_ms") == std::string::npos) kept += line + "\n";
        return kept;
    };
    check(strip(d1.out) == strip(d2.out), "repeated runs are byte-identical (sans runtime)");
}

void test_sweep() {
    std::cout << "sweep:\n";
    RunResult r = run("sweep --entry E4-identity --trials 4 --dims 2..3 --seed 3 2>/dev/null");
    check(r.exit_code == 0, "identity sweep exits 0");
    const Json j = Json::parse(r.out);
    check(j.at("sweep").size() == 19, "default grid yields 19 rows");
    bool tight = true;
    for (const auto& row : j.at("sweep")) {
        if (std::abs(row.at("worst_margin").get<double>()) > 1e-8) tight = false;
    }
    check(tight, "identity margin stays within 1e-8 at every t");

    RunResult single = run("sweep --entry C-wAB --trials 3 --dims 2 --t 0.5 2>/dev/null");
    const Json js = Json::parse(single.out);
    check(js.at("sweep").size() == 1, "explicit --t gives a single row");
    check(js.at("sweep")[0].at("t") == 0.5, "row records the requested t");
}

void test_search() {
    std::cout << "search:\n";
    RunResult r = run("search EQ-equiv-lo --budget 300 --dims 2 --seed 6 2>/dev/null");
    check(r.exit_code == 0, "search exits 0");
    const Json j = Json::parse(r.out);
    check(j.at("evaluations") == 300, "budget is spent exactly");
    check(j.at("best_margin").get<double>() < 0.2, "margin descends from random start");
    check(j.at("operands").is_array() && !j.at("operands").empty(), "witness operands included");
    check(j.at("violation") == false, "no violation claimed for a true bound");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-nradius>\n";
        return 2;
    }
    g_bin = argv[1];
    g_dir = fs::temp_directory_path() / "nradius_cli_tests";
    fs::create_directories(g_dir);

    test_compute();
    test_exit_codes();
    test_list();
    test_check();
    test_sweep();
    test_search();

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cout << "cli_tests: " << g_failures << " check(s) failed\n";
    return 1;
}
