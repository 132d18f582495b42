#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "foursq/certificate.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("FOURSQ_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "FOURSQ_BIN must point at the CLI (set by ctest)");
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("foursq_test_" + name);
}

} // namespace

TEST_CASE("cli decompose") {
    RunResult r = run_cli("decompose 7 --canonical");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "seed = 0\n7 = 2^2 + 1^2 + 1^2 + 1^2\n");

    r = run_cli("decompose 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "seed = 0\n0 = 0^2 + 0^2 + 0^2 + 0^2\n");

    r = run_cli("decompose -5");
    CHECK(r.exit_code == 2);

    r = run_cli("decompose junk");
    CHECK(r.exit_code == 2);

    r = run_cli("decompose 4611686018427387905"); // 2^62 + 1
    CHECK(r.exit_code == 3);

    r = run_cli("decompose 4611686018427387904"); // exactly 2^62 is in range
    CHECK(r.exit_code == 0);
}

TEST_CASE("cli prime") {
    RunResult r = run_cli("prime 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "seed = 0\n2 = 1^2 + 1^2 + 0^2 + 0^2\n");

    r = run_cli("prime 4");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("not prime") != std::string::npos);

    r = run_cli("prime 23 --trace --seed 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("step 1: p' = 3, a5: 3 -> 1, key (2,1) -> (0,0)") != std::string::npos);

    r = run_cli("prime 23 --trace --canonical");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("23 = 3^2 + 3^2 + 2^2 + 1^2") != std::string::npos);

    r = run_cli("prime 23 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"chain_length\": 1") != std::string::npos);
    CHECK(r.output.find("\"seed\": \"0\"") != std::string::npos);
}

TEST_CASE("cli certificates and verify") {
    auto cert_path = temp_file("single.json");
    RunResult r = run_cli("prime 9973 --cert " + cert_path.string());
    CHECK(r.exit_code == 0);

    r = run_cli("verify " + cert_path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output == "VALID\n");

    // Multi-certificate file from decompose.
    auto multi_path = temp_file("multi.json");
    r = run_cli("decompose 360 --cert " + multi_path.string());
    CHECK(r.exit_code == 0);
    r = run_cli("verify " + multi_path.string());
    CHECK(r.exit_code == 0);

    // Corrupt one digit inside the certificate body.
    std::ifstream in(cert_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto pos = text.find("\"d\": \"");
    REQUIRE(pos != std::string::npos);
    text[pos + 6] = text[pos + 6] == '9' ? '8' : '9';
    auto bad_path = temp_file("bad.json");
    std::ofstream(bad_path) << text;
    r = run_cli("verify " + bad_path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("INVALID") != std::string::npos);
    CHECK(r.output.find("step") != std::string::npos);

    std::ofstream(bad_path) << "this is not json";
    r = run_cli("verify " + bad_path.string());
    CHECK(r.exit_code == 2);

    r = run_cli("verify /nonexistent/file.json");
    CHECK(r.exit_code == 2);

    std::filesystem::remove(cert_path);
    std::filesystem::remove(multi_path);
    std::filesystem::remove(bad_path);
}

TEST_CASE("cli selftest and bench") {
    RunResult r = run_cli("selftest --max 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("vacuous") != std::string::npos);

    r = run_cli("selftest --max 200 --jobs 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("selftest: PASS") != std::string::npos);

    auto csv_path = temp_file("bench.csv");
    r = run_cli("bench --range 2..100 --csv " + csv_path.string());
    CHECK(r.exit_code == 0);
    std::ifstream csv(csv_path);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "p,chain_length,max_a5,wall_time_ns");
    int rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 25); // pi(100)
    std::filesystem::remove(csv_path);

    r = run_cli("bench --range 5..2");
    CHECK(r.exit_code == 2);

    r = run_cli("bench --range 2..4611686018427387905");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli usage errors") {
    RunResult r = run_cli("");
    CHECK(r.exit_code == 2);
    r = run_cli("frobnicate 5");
    CHECK(r.exit_code == 2);
    r = run_cli("decompose");
    CHECK(r.exit_code == 2);
}
