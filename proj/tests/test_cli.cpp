#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line tool: exit codes and determinism.

namespace {

int run_cli(const std::string &args) {
    std::string cmd = std::string(MIXDAE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string data(const std::string &name) { return std::string(MIXDAE_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string &name, const std::string &content) {
    std::string path = std::string(MIXDAE_TMP_DIR) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("exit code 0 on a successful reduction") {
    CHECK(run_cli("reduce " + data("high_index.json")) == 0);
    CHECK(run_cli("check " + data("rlc.json")) == 0);
    CHECK(run_cli("trace " + data("nonlinear.json")) == 0);
}

TEST_CASE("exit code 3 on parse errors") {
    std::string bad = temp_file("bad.json", "{ not json");
    CHECK(run_cli("reduce " + bad) == 3);
    CHECK(run_cli("reduce " + std::string(MIXDAE_TMP_DIR) + "/does_not_exist.json") == 3);
}

TEST_CASE("exit code 2 on structurally singular systems") {
    std::string singular = temp_file("singular.json", R"({
      "n": 2,
      "variables": ["x1", "x2"],
      "rows": [
        {"kind": "Q", "entries": {"x1": {"1": {"rat": "1"}}}},
        {"kind": "Q", "entries": {"x1": {"0": {"rat": "1"}}}}
      ],
      "rhs": [{}, {}]
    })");
    CHECK(run_cli("reduce " + singular) == 2);
    CHECK(run_cli("check " + singular) == 2);

    // Structurally regular but exactly singular: detected during tightening.
    std::string cancel = temp_file("cancelling.json", R"({
      "n": 2,
      "variables": ["x1", "x2"],
      "rows": [
        {"kind": "Q", "entries": {"x1": {"0": {"rat": "1"}}, "x2": {"0": {"rat": "1"}}}},
        {"kind": "Q", "entries": {"x1": {"0": {"rat": "1"}}, "x2": {"0": {"rat": "1"}}}}
      ],
      "rhs": [{}, {}]
    })");
    CHECK(run_cli("reduce " + cancel) == 2);
}

TEST_CASE("output is byte-identical for a fixed seed") {
    std::string out1 = std::string(MIXDAE_TMP_DIR) + "/out1.json";
    std::string out2 = std::string(MIXDAE_TMP_DIR) + "/out2.json";
    REQUIRE(run_cli("reduce --seed 99 " + data("rlc.json") + " -o " + out1) == 0);
    REQUIRE(run_cli("reduce --seed 99 " + data("rlc.json") + " -o " + out2) == 0);
    std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("text format and index diagnostic") {
    std::string out = std::string(MIXDAE_TMP_DIR) + "/out.txt";
    REQUIRE(run_cli("reduce --format text --index " + data("high_index.json") + " -o " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.find("reduced system (9 equations, 5 dummies)") != std::string::npos);
    CHECK(text.find("index before reduction: 4") != std::string::npos);
    CHECK(text.find("delta_hat: 7 -> 3") != std::string::npos);
}

TEST_CASE("MIXDAE_SEED environment variable seeds the oracles") {
    std::string out1 = std::string(MIXDAE_TMP_DIR) + "/env1.json";
    std::string out2 = std::string(MIXDAE_TMP_DIR) + "/env2.json";
    std::string base = std::string(MIXDAE_CLI_PATH) + " reduce " + data("rlc.json");
    REQUIRE(WEXITSTATUS(std::system(("MIXDAE_SEED=424242 " + base + " -o " + out1 + " >/dev/null 2>&1").c_str())) == 0);
    REQUIRE(WEXITSTATUS(std::system((base + " --seed 424242 -o " + out2 + " >/dev/null 2>&1").c_str())) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1).find("\"seed\": 424242") != std::string::npos);
}
