// Exit-code and output contract of the CLI, exercised through the built
// binary (path supplied via the PINWHEEL_CLI environment variable).
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() {
    return std::getenv("PINWHEEL_CLI");
}

RunResult run_cli(const std::string& args) {
    RunResult result;
    const std::string command = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
        result.output += buffer.data();
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("cli exit codes and outputs" * doctest::skip(cli_path() == nullptr)) {
    SUBCASE("schedulable instances exit 0 with a certificate") {
        const auto r = run_cli("check 2,4,8,8");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("verdict: schedulable") != std::string::npos);
        CHECK(r.output.find("instance: 2,4,8,8") != std::string::npos);
        CHECK(r.output.find("flat:") != std::string::npos);
    }
    SUBCASE("unschedulable instances exit 1 with the coverage horizon") {
        const auto r = run_cli("check 2,3,5");
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("max-coverage-days: 7") != std::string::npos);
    }
    SUBCASE("budget exhaustion exits 2") {
        const auto r = run_cli("--budget-states 8 check 3,4,10,10,10,12,13,17");
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("verdict: exhausted") != std::string::npos);
    }
    SUBCASE("parse errors exit 64") {
        CHECK(run_cli("check 0,3").exit_code == 64);
        CHECK(run_cli("check 3,x").exit_code == 64);
    }
    SUBCASE("--no-fold still decides correctly") {
        CHECK(run_cli("check --no-fold 3,5,5,5,7").exit_code == 0);
        CHECK(run_cli("check --no-fold 2,3,5").exit_code == 1);
    }
    SUBCASE("verify accepts the emitted certificate and rejects corruption") {
        const auto cert = run_cli("check 3,5,5,5,7");
        REQUIRE(cert.exit_code == 0);
        const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
        const std::string good_path = dir + "/pinwheel-cli-cert.txt";
        {
            std::ofstream out(good_path);
            out << cert.output;
        }
        CHECK(run_cli("verify " + good_path).exit_code == 0);
        std::string corrupted = cert.output;
        const auto flat_pos = corrupted.find("flat: ");
        REQUIRE(flat_pos != std::string::npos);
        corrupted[flat_pos + 6] = corrupted[flat_pos + 6] == '1' ? '2' : '1';
        const std::string bad_path = dir + "/pinwheel-cli-bad.txt";
        {
            std::ofstream out(bad_path);
            out << corrupted;
        }
        const auto bad = run_cli("verify " + bad_path);
        CHECK(bad.exit_code == 1);
        CHECK(bad.output.find("violation: agent=") != std::string::npos);
        std::remove(good_path.c_str());
        std::remove(bad_path.c_str());
    }
    SUBCASE("density reports the exact modified density and classification") {
        const auto r = run_cli("density 3,4,10,10,10,12,13,17");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("modified-density: 2957/2640") != std::string::npos);
        CHECK(r.output.find("classification: below") != std::string::npos);
    }
    SUBCASE("bk prints the family member and its coverage") {
        const auto r = run_cli("bk 3");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("instance: 2,3,5") != std::string::npos);
        CHECK(r.output.find("coverage-days: 7") != std::string::npos);
    }
    SUBCASE("fold prints the cascade down to one agent") {
        const auto r = run_cli("fold 3,5,5,5,7");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("member 1: 3,4,5,5") != std::string::npos);
        CHECK(r.output.find("member 4: 2") != std::string::npos);
    }
    SUBCASE("enumerate streams canonical instances") {
        const auto r = run_cli("enumerate --threshold 13/10 --max-agents 5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.rfind("3,3,3,3\n", 0) == 0);
    }
    SUBCASE("lemma4 count-only prints the bare count") {
        const auto r = run_cli("lemma4 --count-only --threshold 13/10 --max-agents 6");
        CHECK(r.exit_code == 0);
        CHECK(r.output == "486\n");
    }
    SUBCASE("scaled lemma4 campaign exits 0") {
        const auto r = run_cli("lemma4 --threshold 13/10 --max-agents 5 --workers 1");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("all-schedulable: true") != std::string::npos);
    }
    SUBCASE("a counterexample exits 3") {
        const auto r = run_cli("lemma4 --threshold 1/2 --max-agents 3 --workers 1");
        CHECK(r.exit_code == 3);
        CHECK(r.output.find("counterexample:") != std::string::npos);
    }
    SUBCASE("json mode emits parseable single-line objects") {
        const auto r = run_cli("--json check 2,3,5");
        CHECK(r.exit_code == 1);
        CHECK(r.output.rfind("{", 0) == 0);
        CHECK(r.output.find("\"verdict\":\"unschedulable\"") != std::string::npos);
        CHECK(r.output.find("\"max_coverage_days\":7") != std::string::npos);
    }
}
