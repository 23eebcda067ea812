// End-to-end checks of the installed command line surface, driven through
// the shell so the pipelines match the documented usage.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef NEGDEP_CLI_PATH

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& shell_command) {
    CommandResult res;
    const std::string wrapped = shell_command + " 2>/dev/null";
    FILE* pipe = popen(wrapped.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

const std::string cli = NEGDEP_CLI_PATH;

}  // namespace

TEST_CASE("cli: generation is deterministic in the seed") {
    const auto a = run_command(cli + " gen lhs --d 2 --n 8 --seed 5");
    const auto b = run_command(cli + " gen lhs --d 2 --n 8 --seed 5");
    const auto c = run_command(cli + " gen lhs --d 2 --n 8 --seed 6");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output != c.output);
    CHECK(a.output.substr(0, 4) == "2 8\n");
}

TEST_CASE("cli: net generation pipes into verification") {
    const auto res = run_command(cli + " gen net --b 2 --t 0 --m 2 --d 3 | " + cli +
                                 " verify net --b 2 --t 0 --m 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("net\tintervals=24\tviolations=0") != std::string::npos);
}

TEST_CASE("cli: scrambled nets still verify") {
    const auto res = run_command(cli + " gen net --b 2 --t 0 --m 2 --d 3 | " + cli +
                                 " scramble --scheme affine-matrix --b 2 --depth 2 --seed 9"
                                 " --symmetrize | " +
                                 cli + " verify net --b 2 --t 0 --m 2");
    CHECK(res.exit_code == 0);
}

TEST_CASE("cli: exact gamma line format") {
    const auto res = run_command(cli +
                                 " gamma exact --model lhs --d 2 --n 2"
                                 " --set \"1/2,1/2:3/5,3/5\" --J 1,2 --side upper");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "joint=1/50 product=121/10000 ratio=200/121\n");
}

TEST_CASE("cli: estimated gamma emits a confidence interval") {
    const auto res = run_command(cli +
                                 " gamma estimate --model lhs --d 2 --n 2"
                                 " --set \"1/2,1/2:3/5,3/5\" --J 1,2 --reps 500 --seed 1");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("ci=") != std::string::npos);
}

TEST_CASE("cli: discrepancy of a generated sample") {
    const auto res =
        run_command(cli + " gen lhs --d 1 --n 8 --seed 3 | " + cli + " disc");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("dstar=") != std::string::npos);
}

TEST_CASE("cli: repro constants") {
    const auto res = run_command(cli + " repro constants");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("2.5287") != std::string::npos);
    CHECK(res.output.find("2.6442") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with 2") {
    CHECK(run_command(cli + " gamma exact --model lhs --d 2 --n 2 --set 0.5 --J 1").exit_code ==
          2);
    CHECK(run_command(cli + " nonsense").exit_code == 2);
    CHECK(run_command(cli + " gen lhs --d 2").exit_code == 2);
}

TEST_CASE("cli: budget overruns exit with 3") {
    CHECK(run_command(cli + " gamma search --model lhs --d 2 --n 2 --budget 3").exit_code == 3);
}

TEST_CASE("cli: failed verification exits with 1") {
    const auto res = run_command("printf '1 2\\n0.25\\n0.25\\n' | " + cli +
                                 " verify net --b 2 --t 0 --m 1");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("not-a-net") != std::string::npos);
}

#endif  // NEGDEP_CLI_PATH
