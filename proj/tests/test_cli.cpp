#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end tests: invoke the installed binary exactly as a user would and
// inspect exit codes, console output, and the files it writes.

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << text;
}

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(SEARCHSIM_PATH) + " " + args +
                                " > cli_stdout.txt 2> cli_stderr.txt";
    const int raw = std::system(command.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return {code, slurp("cli_stdout.txt"), slurp("cli_stderr.txt")};
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

constexpr const char* kBasicConfig = R"({
    "scheme": "nonadaptive",
    "locations": 2,
    "pi": [0.8, 0.2],
    "mu": [0.2, 0.8],
    "ground_truth": 1,
    "a_bar": 20.0,
    "trials": 20,
    "seed": 7,
    "out": "cli_out_basic"
})";

}  // namespace

TEST_CASE("simulate writes records and a summary and reports per hypothesis") {
    spit("cli_basic.json", kBasicConfig);
    const auto result = run_cli("simulate cli_basic.json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("ground_truth=1") != std::string::npos);
    CHECK(result.out.find("wrote ") != std::string::npos);

    const std::string csv = slurp("cli_out_basic/records.csv");
    CHECK(line_count(csv) == 21);  // header + one row per trial
    CHECK(csv.rfind("scheme,ground_truth,decision,", 0) == 0);

    const auto doc = nlohmann::json::parse(slurp("cli_out_basic/summary.json"));
    CHECK(doc.at("version") == "1.0");
    CHECK(doc.at("config").at("seed") == 7);
    CHECK(doc.at("metrics").at("total_trials") == 20);
}

TEST_CASE("simulate runs one batch per hypothesis when asked for all") {
    std::string config = kBasicConfig;
    config.replace(config.find("\"ground_truth\": 1"), 17, "\"ground_truth\": \"all\"");
    config.replace(config.find("\"trials\": 20"), 12, "\"trials\": 5");
    config.replace(config.find("cli_out_basic"), 13, "cli_out_all");
    spit("cli_all.json", config);

    const auto result = run_cli("simulate cli_all.json");
    CHECK(result.exit_code == 0);

    const std::string csv = slurp("cli_out_all/records.csv");
    CHECK(line_count(csv) == 16);  // header + 5 trials for each of h = 0, 1, 2

    const auto doc = nlohmann::json::parse(slurp("cli_out_all/summary.json"));
    CHECK(doc.at("metrics").at("per_hypothesis").size() == 3);
    CHECK(doc.at("config").at("ground_truth") == "all");
}

TEST_CASE("command-line overrides beat the config file") {
    spit("cli_basic.json", kBasicConfig);
    const auto result =
        run_cli("simulate cli_basic.json --trials 5 --seed 123 --out cli_out_override");
    CHECK(result.exit_code == 0);

    CHECK(line_count(slurp("cli_out_override/records.csv")) == 6);
    const auto doc = nlohmann::json::parse(slurp("cli_out_override/summary.json"));
    CHECK(doc.at("config").at("seed") == 123);
    CHECK(doc.at("config").at("trials") == 5);
}

TEST_CASE("records are byte-identical across reruns and thread counts") {
    spit("cli_basic.json", kBasicConfig);
    REQUIRE(run_cli("simulate cli_basic.json --out cli_out_d1").exit_code == 0);
    REQUIRE(run_cli("simulate cli_basic.json --out cli_out_d2").exit_code == 0);
    REQUIRE(run_cli("simulate cli_basic.json --out cli_out_d3 --threads 3").exit_code == 0);

    const std::string first = slurp("cli_out_d1/records.csv");
    CHECK(first == slurp("cli_out_d2/records.csv"));
    CHECK(first == slurp("cli_out_d3/records.csv"));
}

TEST_CASE("constraint violations exit with the config code and name the issue") {
    spit("cli_bad.json", R"({
        "scheme": "adaptive", "locations": 2, "pi": [0.8, 0.2],
        "ground_truth": 0, "a": 3.0
    })");
    const auto result = run_cli("simulate cli_bad.json");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("config error") != std::string::npos);
    CHECK(result.err.find("must exceed 5") != std::string::npos);
}

TEST_CASE("a missing config file is a config error, not a crash") {
    const auto result = run_cli("simulate no_such_config.json");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("cannot read config file") != std::string::npos);
}

TEST_CASE("simulate refuses sweep-only configs") {
    spit("cli_grid.json", R"({
        "scheme": "nonadaptive", "locations": 2, "pi": [0.8, 0.2],
        "mu": [0.2, 0.8], "ground_truth": 1, "thresholds": [20.0, 60.0],
        "trials": 15, "out": "cli_out_sweep"
    })");
    const auto result = run_cli("simulate cli_grid.json");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("sweep subcommand") != std::string::npos);
}

TEST_CASE("sweep writes the slope table over the threshold grid") {
    spit("cli_grid.json", R"({
        "scheme": "nonadaptive", "locations": 2, "pi": [0.8, 0.2],
        "mu": [0.2, 0.8], "ground_truth": 1, "thresholds": [20.0, 60.0],
        "trials": 15, "seed": 3, "out": "cli_out_sweep"
    })");
    const auto result = run_cli("sweep cli_grid.json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("threshold=20") != std::string::npos);
    CHECK(result.out.find("threshold=60") != std::string::npos);

    const std::string csv = slurp("cli_out_sweep/sweep.csv");
    CHECK(line_count(csv) == 3);
    CHECK(csv.rfind("threshold,mean_N,stderr_N,error_rate,wilson_hi,slope\n", 0) == 0);

    const auto doc = nlohmann::json::parse(slurp("cli_out_sweep/summary.json"));
    REQUIRE(doc.at("sweep").size() == 2);
    CHECK(doc.at("sweep").at(0).at("threshold") == 20.0);
}

TEST_CASE("sweep demands a grid") {
    spit("cli_basic.json", kBasicConfig);
    const auto result = run_cli("sweep cli_basic.json");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("thresholds") != std::string::npos);
}

TEST_CASE("paired sweeps compare the two universal schemes per threshold") {
    spit("cli_paired.json", R"({
        "scheme": "paired", "locations": 2, "pi": [0.8, 0.2],
        "mu": [0.2, 0.8], "ground_truth": 1, "thresholds": [6.0, 9.0],
        "trials": 8, "seed": 21, "out": "cli_out_paired"
    })");
    const auto result = run_cli("sweep cli_paired.json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("gain=") != std::string::npos);

    CHECK(line_count(slurp("cli_out_paired/sweep_adaptive.csv")) == 3);
    CHECK(line_count(slurp("cli_out_paired/sweep_nonadaptive.csv")) == 3);

    const auto doc = nlohmann::json::parse(slurp("cli_out_paired/summary.json"));
    REQUIRE(doc.at("ratios").size() == 2);
    CHECK(doc.at("ratio_target") == 2);
    const double gain = doc.at("ratios").at(0).at("ratio").get<double>();
    CHECK(gain > 0.0);
}

TEST_CASE("selftest passes and its report is stable across runs") {
    const auto first = run_cli("selftest");
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("ok") != std::string::npos);
    CHECK(first.out.find("FAIL") == std::string::npos);

    const auto second = run_cli("selftest");
    CHECK(second.exit_code == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("bad invocations are rejected by the argument parser") {
    CHECK(run_cli("").exit_code != 0);
    CHECK(run_cli("simulate").exit_code != 0);  // missing the config argument
    CHECK(run_cli("frobnicate x.json").exit_code != 0);
}
