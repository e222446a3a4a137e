#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkz/cli.hpp"
#include "gkz/whittaker.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = gkz::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("gkz_cli_test_" + std::to_string(++counter) + ".json");
        std::ofstream f(path_);
        f << contents;
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

const char* kGammaProblem = R"({"A": [[1]], "gamma": [[2.0, 0.0]], "u": [1.0]})";
const char* kExpProblem = R"({"A": [], "lattice": [[1]], "gamma": [[0.7, 0.0]], "u": [2.0]})";

} // namespace

TEST_CASE("eval prints a json value with an error estimate") {
    TempFile f(kGammaProblem);
    auto r = run({"eval", f.str()});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());

    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("value"));
    REQUIRE(j.contains("err"));
    CHECK(std::abs(j["value"][0].get<double>() - 1.0) < 1e-9);  // Gamma(2) = 1
    CHECK(std::abs(j["value"][1].get<double>()) < 1e-12);
    CHECK(j["err"].get<double>() < 1e-9);
}

TEST_CASE("eval output is byte-identical across runs") {
    TempFile f(kExpProblem);
    auto a = run({"eval", f.str()});
    auto b = run({"eval", f.str()});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    auto j = nlohmann::json::parse(a.out);
    const double want = std::pow(2.0, 0.7) * std::exp(-2.0);
    CHECK(std::abs(j["value"][0].get<double>() - want) < 1e-14);
    CHECK(j["err"].get<double>() == 0.0);
}

TEST_CASE("affine spectral constraints resolve to the minimum-norm point") {
    TempFile f(R"({"A": [[1, 1]], "c": [[-3.0, 0.0]], "u": [1.0, 1.0]})");
    auto r = run({"eval", f.str()});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    // gamma = (1.5, 1.5); the relation pins t2 = t1, so integral = Gamma(3)/2^3
    CHECK(std::abs(j["value"][0].get<double>() - 0.25) < 1e-9);
}

TEST_CASE("lattice subcommand prints the relation basis") {
    TempFile f(R"({"A": [[1, -1, 0], [0, 1, -1]],
                   "gamma": [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]],
                   "u": [1.0, 1.0, 1.0]})");
    auto r = run({"lattice", f.str()});
    REQUIRE(r.code == 0);
    CHECK(r.out == "[[1,1,1]]\n");
}

TEST_CASE("verify emits one report per equation instance") {
    TempFile f(kExpProblem);
    auto r = run({"verify", f.str()});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    // one lattice row (lattice + spectral) and one variable (contiguity)
    CHECK(j.size() == 3);
    for (const auto& rep : j) {
        CHECK(rep.contains("equation"));
        CHECK(rep.contains("params"));
        CHECK(rep.contains("abs"));
        CHECK(rep.contains("rel"));
        CHECK(rep.contains("step"));
        CHECK(rep["rel"].get<double>() < 1e-4);
    }
}

TEST_CASE("validation failures exit 2 and keep stdout clean") {
    SUBCASE("missing file") {
        auto r = run({"eval", "/nonexistent/problem.json"});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(!r.err.empty());
    }
    SUBCASE("malformed json") {
        TempFile f("{\"A\": [[1]");
        auto r = run({"eval", f.str()});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
    }
    SUBCASE("unknown key") {
        TempFile f(R"({"A": [[1]], "gamma": [[1.0, 0.0]], "u": [1.0], "extra": 1})");
        auto r = run({"eval", f.str()});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
    }
    SUBCASE("gamma and c together") {
        TempFile f(R"({"A": [[1]], "gamma": [[1.0, 0.0]], "c": [[-1.0, 0.0]], "u": [1.0]})");
        auto r = run({"eval", f.str()});
        CHECK(r.code == 2);
    }
    SUBCASE("missing u") {
        TempFile f(R"({"A": [[1]], "gamma": [[1.0, 0.0]]})");
        auto r = run({"eval", f.str()});
        CHECK(r.code == 2);
    }
    SUBCASE("unknown quadrature key") {
        TempFile f(R"({"A": [[1]], "gamma": [[1.0, 0.0]], "u": [1.0],
                       "quadrature": {"points": 10}})");
        auto r = run({"eval", f.str()});
        CHECK(r.code == 2);
    }
}

TEST_CASE("numeric domain failures exit 3 and keep stdout clean") {
    TempFile f(R"({"A": [[1]], "gamma": [[-1.0, 0.0]], "u": [1.0]})");
    auto r = run({"eval", f.str()});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
}

TEST_CASE("whittaker subcommand") {
    SUBCASE("single point matches the closed form") {
        auto r = run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1.0,2.0",
                      "--x", "0.3"});
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        std::string header, row;
        std::getline(is, header);
        CHECK(header == "x,re,im,err");
        REQUIRE(std::getline(is, row));

        double x = 0, re = 0, im = 0, errv = 0;
        REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &x, &re, &im, &errv) == 4);
        gkz::Complex want = 2.0 * std::exp(0.5 * 3.0 * 0.3) *
                            gkz::bessel_k_oracle(gkz::Complex(-1.0, 0.0),
                                                 2.0 * std::exp(0.15));
        CHECK(x == 0.3);
        CHECK(std::abs(re - want.real()) / std::abs(want) < 1e-6);
        CHECK(std::abs(im) < 1e-12);
    }
    SUBCASE("grids produce one row per node") {
        auto r = run({"whittaker", "--type", "min", "--rank", "1", "--lambda", "0.8,1.7",
                      "--grid", "-1:1:3"});
        REQUIRE(r.code == 0);
        int lines = 0;
        std::istringstream is(r.out);
        std::string line;
        while (std::getline(is, line)) ++lines;
        CHECK(lines == 4);  // header + 3 rows
    }
    SUBCASE("bad grids and spectra are usage errors") {
        CHECK(run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1,2",
                   "--grid", "1:0:3"}).code == 2);
        CHECK(run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1,2",
                   "--grid", "0:1:1"}).code == 2);
        CHECK(run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1.0",
                   "--x", "0.0"}).code == 2);
        CHECK(run({"whittaker", "--type", "median", "--rank", "1", "--lambda", "1,2",
                   "--x", "0.0"}).code == 2);
        CHECK(run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1,2"}).code == 2);
        CHECK(run({"whittaker", "--type", "max", "--rank", "1", "--lambda", "1,2",
                   "--x", "0.0", "--grid", "0:1:2"}).code == 2);
    }
}

TEST_CASE("weyl-check subcommand") {
    auto r = run({"weyl-check", "--n", "1", "--lmax", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 5);  // l = -2..2
    for (const auto& entry : j) {
        CHECK(entry["N"].get<int>() == 1);
        CHECK(entry["annihilated"].get<bool>());
    }

    auto s = run({"weyl-check", "--n", "2", "--lmax", "1", "--symbolic"});
    REQUIRE(s.code == 0);
    auto js = nlohmann::json::parse(s.out);
    CHECK(js.size() == 9);
    for (const auto& entry : js) CHECK(entry["annihilated"].get<bool>());

    CHECK(run({"weyl-check", "--n", "0", "--lmax", "2"}).code == 2);
    CHECK(run({"weyl-check", "--n", "1", "--lmax", "7"}).code == 2);
}

TEST_CASE("top-level usage") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("lattice") != std::string::npos);
}
