#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("QFIX_CLI");
    REQUIRE_MESSAGE(p != nullptr, "QFIX_CLI must point at the qfix binary");
    return p;
}

std::string fixture_dir() {
    const char* p = std::getenv("QFIX_FIXTURES");
    REQUIRE_MESSAGE(p != nullptr, "QFIX_FIXTURES must point at the fixtures directory");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("eval sqrt reports the expected digit agreement") {
    RunResult r = run("eval sqrt --w 48 --n 64 --m 32 --b 64 --verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("6.92820323027550") != std::string::npos);
    CHECK(r.output.find("digits = 15") != std::string::npos);
    CHECK(r.output.find("bound_ok = yes") != std::string::npos);
}

TEST_CASE("eval ln of one prints zero and exits cleanly") {
    RunResult r = run("eval ln --w 1 --n 8 --m 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("result = 0") != std::string::npos);
}

TEST_CASE("exit codes: parameter, domain, io") {
    CHECK(run("eval sqrt --w 0.5 --b 3 --m 2 --n 10").exit_code == 3);
    RunResult r = run("eval sqrt --w 91338 --m 17 --n 17 --b 16");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("max{2m, 4}") != std::string::npos);
    CHECK(run("eval ln --w 0 --n 8 --m 4").exit_code == 2);
    CHECK(run("eval fracpow2 --w 2 --f 0.5 --n 8 --m 4").exit_code == 2);
    CHECK(run("verify /no/such/file.json").exit_code == 4);
}

TEST_CASE("verify runs the shipped table fixtures") {
    RunResult r = run("verify " + fixture_dir() + "/table2.json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all cases pass") != std::string::npos);
}

TEST_CASE("verify: empty case list passes, absurd digit floor fails") {
    std::string empty = "/tmp/qfix_empty_cases.json";
    std::ofstream(empty) << "{\"cases\": []}";
    CHECK(run("verify " + empty).exit_code == 0);

    std::string absurd = "/tmp/qfix_absurd_case.json";
    std::ofstream(absurd) << R"({"cases": [{"algorithm": "sqrt", "w": "48",
        "params": {"n": 64, "m": 32, "b": 64},
        "expected": {"min_digits": 99}}]})";
    CHECK(run("verify " + absurd).exit_code == 1);

    std::string malformed = "/tmp/qfix_malformed.json";
    std::ofstream(malformed) << "{not json";
    CHECK(run("verify " + malformed).exit_code == 4);
}

TEST_CASE("bound subcommand prints the closed form") {
    RunResult r = run("bound fracpow --l 50");
    CHECK(r.exit_code == 0);
    // 2^-49
    CHECK(r.output.find("1.77635683940025") != std::string::npos);
}

TEST_CASE("resources preset reproduces the op-count columns") {
    RunResult r = run("resources --preset table6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find(",20,10,") != std::string::npos);
    CHECK(r.output.find(",60,20,") != std::string::npos);
    CHECK(r.output.find(",600,200,") != std::string::npos);
    CHECK(r.output.find(",1200,400,") != std::string::npos);

    RunResult chk = run("resources --preset-file " + fixture_dir() +
                        "/table6.preset --check");
    CHECK(chk.exit_code == 0);
}

TEST_CASE("circuit selfcheck sweeps every nonzero input") {
    RunResult r = run("circuit count-k --n 12 --m 4 --selfcheck");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("255 valid inputs") != std::string::npos);
    CHECK(r.output.find("pass") != std::string::npos);
}

TEST_CASE("constants prints the ln2 register") {
    RunResult r = run("constants --b 10");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("709 / 2^10") != std::string::npos);
}

TEST_CASE("json output is byte-identical across runs") {
    std::string args = "eval fracpow --w 76 --f 0.7431 --n 92 --m 32 --l 50 --nf 64 "
                       "--verify --json";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"bound_ok\": true") != std::string::npos);

    RunResult c = run("verify " + fixture_dir() + "/table4.json --json");
    RunResult d = run("verify " + fixture_dir() + "/table4.json --json");
    CHECK(c.output == d.output);
}

TEST_CASE("csv report shape") {
    RunResult r = run("verify " + fixture_dir() + "/table3.json --csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("algorithm,w,result,oracle,abs_error,bound,bound_ok,digits,pass",
                         0) == 0);
}

TEST_CASE("eval --trace writes a replayable trace file") {
    std::string path = "/tmp/qfix_trace_test.json";
    RunResult r = run("eval sqrt --w 48 --n 64 --m 32 --b 64 --trace " + path);
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(body.find("\"algorithm\": \"sqrt\"") != std::string::npos);
    CHECK(body.find("\"steps\"") != std::string::npos);
    CHECK(body.find("recip_step") != std::string::npos);
}

TEST_CASE("an explicit --n narrows the decimal parse width") {
    RunResult r = run("eval sqrt --w 0.0198 --n 64 --m 32 --b 64 --verify");
    CHECK(r.exit_code == 0);
    // 0.0198 truncated into 32 fraction bits; oracle agreement at that dyadic
    CHECK(r.output.find("result = 0.140712472") != std::string::npos);
    CHECK(r.output.find("bound_ok = yes") != std::string::npos);
}

TEST_CASE("curves emits plotting rows that honor preconditions") {
    RunResult r = run("curves sqrt --w 48 --m 6 --from 16 --to 64 --step 8");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("b,abs_error,bound", 0) == 0);
    CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 8);  // header + 7 rows

    // points below the precision floor are skipped
    RunResult s = run("curves sqrt --w 91338 --m 17 --from 16 --to 64 --step 8");
    CHECK(s.exit_code == 0);
    CHECK(std::count(s.output.begin(), s.output.end(), '\n') == 5);  // header + 4 rows

    RunResult l = run("curves ln --w 48 --m 6 --from 10 --to 50 --step 10 --json");
    CHECK(l.exit_code == 0);
    CHECK(l.output.find("\"l\": 50") != std::string::npos);
}
