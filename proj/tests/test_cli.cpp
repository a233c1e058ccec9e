#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffmat/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace diffmat;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

Json parse_first_line(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    return Json::parse(line);
}

Json normalized(Json j) {
    j.erase("wall_ms");
    return j;
}

Json load_golden(const std::string& name) {
    const std::string path = std::string(DIFFMAT_GOLDEN_DIR) + "/" + name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    Json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("count emits the exact record; schema pinned by golden file") {
    const RunResult r = run({"count", "--g", "2", "--k", "3", "--lambda", "2"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["schema_version"] == schema_version);
    CHECK(j["count"] == "384");
    CHECK(j["p_return"] == "3/32");
    CHECK(j["method"] == "brute");
    CHECK(j["params"]["d"] == 3);
    CHECK(j.contains("rigor"));
    CHECK(normalized(j) == load_golden("count_2_3_2.json"));
}

TEST_CASE("count reports the obstructed case with the drake flag") {
    const RunResult r = run({"count", "--g", "2", "--k", "3", "--lambda", "1"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["count"] == "0");
    CHECK(j["drake"] == true);
}

TEST_CASE("counts beyond double precision survive JSON transport as strings") {
    const RunResult r = run({"count", "--g", "2", "--k", "2", "--lambda", "40"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    BigCount fact = 1;
    for (long i = 2; i <= 80; ++i) fact *= i;
    BigCount half = 1;
    for (long i = 2; i <= 40; ++i) half *= i;
    const BigCount expected = big_pow(2, 80) * fact / (half * half);
    CHECK(j["count"].get<std::string>() == expected.str());

    // forcing the dft on this instance hits the integrity guard -> exit 2
    const RunResult forced =
        run({"count", "--g", "2", "--k", "2", "--lambda", "40", "--method", "dft"});
    CHECK(forced.code == 2);
    CHECK(forced.err.find("integrity") != std::string::npos);
}

TEST_CASE("count honors --method dft") {
    const RunResult r = run({"count", "--g", "3", "--k", "3", "--lambda", "1", "--method", "dft"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["count"] == "486");
    CHECK(j["method"] == "dft");
}

TEST_CASE("estimate is reproducible and schema-stable") {
    const std::vector<std::string> args{"estimate", "--g",       "2",    "--k",    "3",
                                        "--lambda", "2",         "--samples", "20000",
                                        "--seed",   "42"};
    const RunResult a = run(args);
    const RunResult b = run(args);
    CHECK(a.code == 0);
    CHECK(normalized(parse_first_line(a.out)) == normalized(parse_first_line(b.out)));
    const Json j = parse_first_line(a.out);
    CHECK(j["seed"] == 42);
    CHECK(j["samples"] == 20000);
    CHECK(normalized(j) == load_golden("estimate_2_3_2.json"));
}

TEST_CASE("asymptotic record: value, approx float, k = 2 label") {
    const RunResult r = run({"asymptotic", "--g", "2", "--k", "3", "--lambda", "2"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["log10_count"].get<double>() == doctest::Approx(2.7161201411).epsilon(1e-9));
    CHECK(j["count_approx"].get<double>() == doctest::Approx(520.1398656).epsilon(1e-8));
    CHECK_FALSE(j.contains("note"));

    const RunResult k2 = run({"asymptotic", "--g", "3", "--k", "2", "--lambda", "4"});
    CHECK(k2.code == 0);
    CHECK(parse_first_line(k2.out).contains("note"));  // outside the stated hypothesis
}

TEST_CASE("bounds record: auto delta, golden schema") {
    const RunResult r = run({"bounds", "--g", "2", "--k", "3", "--lambda", "2", "--delta", "0.002"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["rigor"]["rigorous"] == true);
    CHECK(normalized(j) == load_golden("bounds_2_3_2.json"));

    const RunResult auto_r = run({"bounds", "--g", "2", "--k", "3", "--lambda", "2"});
    CHECK(auto_r.code == 0);
    CHECK(parse_first_line(auto_r.out)["delta"] == doctest::Approx(std::pow(4.0, -5.0 / 12.0)));
}

TEST_CASE("lattice census with --list and --verify") {
    const RunResult r = run({"lattice", "--g", "3", "--k", "4", "--list", "--verify"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["size"] == 27);
    CHECK(j["verified"] == true);
    CHECK(j["elements"].size() == 27);
    CHECK(j["max_hom_defect"].get<double>() <= 1e-9);
    // coefficients carry 1-based pair labels
    const Json& first = j["elements"][0]["coeffs"];
    CHECK(first.size() == 3);  // pairs {1,2},{1,3},{2,3} for k = 4
    CHECK(first[0]["pair"] == Json::array({1, 2}));
    CHECK(first[2]["pair"] == Json::array({2, 3}));
}

TEST_CASE("integrate emits the sandwich record") {
    const RunResult r = run({"integrate", "--g", "2", "--k", "3", "--lambda", "8", "--delta",
                             "0.002", "--grid", "9", "--random", "500"});
    CHECK(r.code == 0);
    const Json j = parse_first_line(r.out);
    CHECK(j["sandwich"]["integral_ok"] == true);
    CHECK(j["pointwise"]["real_violations"] == 0);
}

TEST_CASE("integrate rejects an inadmissible delta with a domain error") {
    const RunResult r = run({"integrate", "--g", "2", "--k", "3", "--lambda", "8", "--delta",
                             "0.5", "--grid", "9"});
    CHECK(r.code == 1);
    CHECK(r.err.find("admissible") != std::string::npos);
}

TEST_CASE("verify exits 0 on a passing suite") {
    const RunResult r = run({"verify", "--suite", "moments", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("sweep writes a sorted CSV with the ratio column") {
    const std::string path = "sweep_test_output.csv";
    const RunResult r = run({"sweep", "--g", "2", "--k", "3", "--lambda-min", "1", "--lambda-max",
                             "4", "--out", path});
    CHECK(r.code == 0);
    std::ifstream csv(path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "lambda,t,count,log10_count,asymptotic_log10,ratio,delta,lower,upper,rigorous,drake");
    long prev_lambda = 0;
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        std::istringstream fields(line);
        std::string lambda_s, t_s, count_s, l10_s, asym_s, ratio_s;
        std::getline(fields, lambda_s, ',');
        std::getline(fields, t_s, ',');
        std::getline(fields, count_s, ',');
        std::getline(fields, l10_s, ',');
        std::getline(fields, asym_s, ',');
        std::getline(fields, ratio_s, ',');
        const long lambda = std::stol(lambda_s);
        CHECK(lambda > prev_lambda);  // sorted by lambda
        prev_lambda = lambda;
        if (lambda == 2) {
            CHECK(count_s == "384");
            CHECK(std::stod(ratio_s) == doctest::Approx(0.738263).epsilon(1e-4));
        }
        if (lambda == 1) CHECK(count_s == "0");
        ++rows;
    }
    CHECK(rows == 4);
    std::remove(path.c_str());
}

TEST_CASE("exit codes: usage 1, domain 1, resource 2") {
    CHECK(run({"count", "--g", "2", "--k", "3", "--lambda", "2", "--bogus"}).code == 1);
    CHECK(run({"unknown-command"}).code == 1);
    const RunResult usage = run({"count", "--g", "2"});
    CHECK(usage.code == 1);
    CHECK(usage.err.find("--k") != std::string::npos);  // usage text mentions the flags

    CHECK(run({"count", "--g", "1", "--k", "3", "--lambda", "1"}).code == 1);

    const RunResult starved = run({"count", "--g", "3", "--k", "3", "--lambda", "2", "--max-nodes",
                                   "4", "--max-dft-work", "10"});
    CHECK(starved.code == 2);
    CHECK(starved.err.find("resource") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run({"--help"}).code == 0);
}
