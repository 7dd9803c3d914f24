#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

// Drives the installed binary end to end: output shapes, error channels, and
// exit codes. Heavier determinism checks live in the acceptance suite.

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_command(const std::string& args) {
    std::string cmd = std::string(KKCALC_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("kk text output matches the documented lines") {
    RunResult r = run_command("kk --a \"[Z/2;0]\" --b \"[Z;0]\" --deg 1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("KK_1               = Z/2") != std::string::npos);
    REQUIRE(r.output.find("Hom part           = 0") != std::string::npos);
    REQUIRE(r.output.find("Ext part           = Z/2") != std::string::npos);
}

TEST_CASE("json output carries invariant factors as arrays") {
    RunResult r = run_command("kk --a \"[Z/2;0]\" --b \"[Z;0]\" --deg 1 --format json");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("\"degree\": 1") != std::string::npos);
    REQUIRE(r.output.find("\"free_rank\": 0") != std::string::npos);
    REQUIRE(r.output.find("\"torsion\": [") != std::string::npos);
    // empty group renders as free_rank 0 with an empty torsion array
    RunResult e = run_command("kk --a \"[Z/2;0]\" --b \"[Z;0]\" --deg 0 --format json");
    REQUIRE(e.output.find("\"torsion\": []") != std::string::npos);
}

TEST_CASE("primary-form flag switches the text rendering") {
    RunResult inv = run_command("dual \"Z/12\"");
    REQUIRE(inv.output.find("Z/12") != std::string::npos);
    RunResult pri = run_command("--primary-form dual \"Z/12\"");
    REQUIRE(pri.output.find("Z/4 + Z/3") != std::string::npos);
}

TEST_CASE("exit codes distinguish the error channels") {
    REQUIRE(run_command("decompose \"[Z + Z/4 ; Z/9]\"").exit_code == 0);
    REQUIRE(run_command("thm44 --a \"[Z;0]\" --deg 0").exit_code == 2);   // hypothesis
    REQUIRE(run_command("primary \"[Z;0]\"").exit_code == 2);             // hypothesis
    REQUIRE(run_command("dual \"Z/0\"").exit_code == 1);                  // parse error
    REQUIRE(run_command("dual \"Z/1\"").exit_code == 1);                  // parse error
    REQUIRE(run_command("nonsense-subcommand").exit_code == 1);
    REQUIRE(run_command("snake").exit_code == 1);  // needs a job file
}

TEST_CASE("job files run every command deterministically") {
    const std::string cmd = std::string("--job ") + KKCALC_JOBFILE + " --format json";
    RunResult a = run_command(cmd);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output.find("\"schema_version\": 1") != std::string::npos);
    RunResult b = run_command(cmd);
    REQUIRE(a.output == b.output);
}

TEST_CASE("job files reject unknown fields and bad schemas") {
    auto write_temp = [](const std::string& body) {
        std::string path = std::string(P_tmpdir) + "/kkcalc_cli_test_job.json";
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fwrite(body.data(), 1, body.size(), f);
        fclose(f);
        return path;
    };
    std::string bad_field = write_temp(
        R"({"schema_version": 1, "commands": [{"cmd": "dual", "g": "Z/6", "bogus": 1}]})");
    REQUIRE(run_command("--job " + bad_field).exit_code == 1);
    std::string bad_version = write_temp(R"({"schema_version": 2, "commands": []})");
    REQUIRE(run_command("--job " + bad_version).exit_code == 1);
    std::string bad_root = write_temp(R"({"schema_version": 1, "commands": [], "extra": {}})");
    REQUIRE(run_command("--job " + bad_root).exit_code == 1);
    std::string not_json = write_temp("this is not json");
    REQUIRE(run_command("--job " + not_json).exit_code == 1);
}
