#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lozi/cli.hpp"

using namespace lozi::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "lozi");
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("periodic prints the point") {
    const Run r = run_cli({"periodic", "--a", "4", "--word", "12", "--tol", "1e-8"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "-0.1 -0.3\n");
    CHECK(run_cli({"periodic", "--a", "4", "--word", "2"}).out == "0.166666666667 -0.166666666667\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"bogus"}).code == kExitUsage);
    CHECK(run_cli({"periodic", "--a", "4"}).code == kExitUsage);
    CHECK(run_cli({"periodic", "--a", "4", "--word", "13"}).code == kExitUsage);
    CHECK(run_cli({"dld", "--p", "2"}).code == kExitUsage);
    CHECK(run_cli({"dld", "--format", "png"}).code == kExitUsage);
    CHECK(run_cli({"dld", "--format", "pgm"}).code == kExitUsage);
    CHECK(run_cli({"dld", "--a", "abc"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--epsilon", "-1"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--n-range", "3", "1"}).code == kExitUsage);
    CHECK(run_cli({"strips", "--a", "4"}).code == kExitUsage);
    CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("verify passes for a > 4 and reports key=value lines") {
    const Run r = run_cli({"verify", "--a", "4.5", "--epsilon", "0.1", "--n-range", "-5", "5", "--samples", "500",
                           "--seed", "7", "--workers", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verify.result=pass\n") != std::string::npos);
    CHECK(r.out.find("assumption1.transition_matrix=pass") != std::string::npos);
    CHECK(r.out.find("contraction.width_ratio=pass") != std::string::npos);
    CHECK(r.out.find("transition.all_ones=pass") != std::string::npos);
    CHECK(r.out.find("cone_condition.stable_inclusion=pass") != std::string::npos);
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        CHECK(line.substr(0, eq).find('.') != std::string::npos);
    }
}

TEST_CASE("verify is reproducible") {
    const std::vector<std::string> args{"verify", "--a", "4.5", "--epsilon", "0.1", "--n-range", "0", "3",
                                        "--samples", "300", "--seed", "11"};
    CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("verify fails below the threshold") {
    const Run r = run_cli({"verify", "--a", "3.5", "--samples", "100"});
    CHECK(r.code == kExitFailure);
    CHECK(r.out.find("verify.result=fail") != std::string::npos);
}

TEST_CASE("orbit csv") {
    const Run r = run_cli({"orbit", "--a", "4", "--x", "-0.1", "--y", "-0.3", "--forward", "3"});
    CHECK(r.code == kExitOk);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "step,x,y,symbol");
    std::string symbols;
    while (std::getline(is, line)) symbols += line.back();
    CHECK(symbols == "1212");
    const Run esc = run_cli({"orbit", "--a", "4", "--x", "0.45", "--y", "0.45", "--forward", "3"});
    CHECK(esc.out.find(",-\n") != std::string::npos);
}

TEST_CASE("strips csv") {
    const Run r = run_cli({"strips", "--a", "4.5", "--n-range", "0", "1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("n,strip_id,curve_id,vertex_index,x,y\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 2 * 4 * 2 * 2);
    CHECK(r.out.find("0,H1,upper,0,-0.45,0.422222222\n") != std::string::npos);
}

TEST_CASE("dld csv and pgm") {
    const Run r = run_cli({"dld", "--a", "4.5", "--N", "5", "--spacing", "0.09"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("x,y,md,escaped\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 11 * 11);
    CHECK(run_cli({"dld", "--a", "4.5", "--N", "5", "--spacing", "0.09", "--workers", "3"}).out == r.out);

    const auto dir = std::filesystem::temp_directory_path() / "lozi_cli_test";
    std::filesystem::create_directories(dir);
    const std::string pgm = (dir / "field.pgm").string();
    const Run p = run_cli({"dld", "--a", "4.5", "--epsilon", "0.1", "--n0", "-3", "--N", "5", "--spacing", "0.09",
                           "--x-min", "-0.2", "--x-max", "0.2", "--format", "pgm", "--output", pgm});
    CHECK(p.code == kExitOk);
    std::ifstream f(pgm, std::ios::binary);
    std::string magic;
    f >> magic;
    CHECK(magic == "P5");
    CHECK(std::filesystem::exists(pgm + ".norm.txt"));
    CHECK(std::filesystem::file_size(pgm) > 2 * 5 * 11);
    std::filesystem::remove_all(dir);
}
