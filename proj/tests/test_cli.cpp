#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string cli = SINGTHETA_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/singtheta_cli_out.txt";
    const std::string cmd = cli + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream is(out_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(is)), {});
    return {WEXITSTATUS(rc), text};
}

} // namespace

TEST_CASE("theta writes a deterministic expansion") {
    auto a = run("theta --form [[2,1],[1,4]] --degree 1 --bound 6");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output.find("\"degree\": 1") != std::string::npos);
    auto b = run("theta --form [[2,1],[1,4]] --degree 1 --bound 6");
    CHECK(a.output == b.output); // byte identical re-run
}

TEST_CASE("theta then detect round trip") {
    auto t = run("theta --form [[2,1],[1,4]] --degree 3 --bound 6 --out /tmp/st_theta.json");
    REQUIRE(t.exit_code == 0);
    auto d = run("detect --file /tmp/st_theta.json --p 11 --m 1");
    REQUIRE(d.exit_code == 0);
    CHECK(d.output.find("\"p_rank\": 2") != std::string::npos);
    CHECK(d.output.find("\"state\": \"singular\"") != std::string::npos);
}

TEST_CASE("decompose emits a report") {
    run("theta --form [[2,1],[1,4]] --degree 3 --bound 6 --out /tmp/st_theta.json");
    auto r = run("decompose --file /tmp/st_theta.json --p 11 --m 1 --det-bound 2 "
                 "--trace-bound 5");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("\"residual_congruent\": true") != std::string::npos);
}

TEST_CASE("bound insufficiency exits with code 3") {
    run("theta --form [[2,1],[1,4]] --degree 3 --bound 4 --out /tmp/st_short.json");
    auto r = run("decompose --file /tmp/st_short.json --p 11 --m 1 --det-bound 6");
    CHECK(r.exit_code == 3);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("theta --form [[2,1],[1,3]] --degree 1 --bound 4").exit_code == 2); // odd diag
    CHECK(run("theta --form [[2,1]] --degree 1 --bound 4").exit_code == 2);
    CHECK(run("detect --file /nonexistent.json --p 7").exit_code == 2);
    CHECK(run("classes").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("classes by discriminant and level") {
    auto d = run("classes --disc -23");
    REQUIRE(d.exit_code == 0);
    CHECK(d.output.find("\"count\": 2") != std::string::npos);
    auto l = run("classes --level-p 7");
    REQUIRE(l.exit_code == 0);
    CHECK(l.output.find("\"count\": 1") != std::string::npos);
    auto w = run("classes --level-p 5");
    REQUIRE(w.exit_code == 0);
    CHECK(w.output.find("warning") != std::string::npos);
}

TEST_CASE("verify suites run") {
    auto r = run("verify uv --p 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS uv") != std::string::npos);
    auto w = run("verify weber --dmin -40 --bound 100");
    CHECK(w.exit_code == 0);
    auto bad = run("verify nosuchsuite");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("kitaoka subcommand emits kappa") {
    auto r = run("kitaoka --form [[2,1],[1,4]] --d 7");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("\"kappa_re\"") != std::string::npos);
    CHECK(r.output.find("\"local_check\": true") != std::string::npos);
    auto alias = run("verify-kitaoka --form [[2,1],[1,4]] --d 7");
    CHECK(alias.exit_code == 0);
}
