// End-to-end checks of the installed command-line tool. Each test spawns
// the real binary and inspects exit codes and written artifacts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int run(const std::string& args) {
    const std::string cmd =
        std::string(CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_capture(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = std::string(CLI_BIN) + " " + args + " > " +
                            stdout_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir =
        fs::temp_directory_path() / "strikeplan_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

// Wall time varies between runs; every other byte must not.
std::string drop_timing(const std::string& text) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        if (line.find("plan_seconds") == std::string::npos) {
            out += line;
            out += '\n';
        }
        start = end + 1;
    }
    return out;
}

std::string scenario_file(const std::string& name) {
    return std::string(SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("plan writes reports and trajectories") {
    const fs::path dir = fresh_dir("plan");
    const int rc =
        run("plan " + scenario_file("case1.json") + " --out " + dir.string());
    CHECK(rc == 0);
    REQUIRE(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "report.txt"));
    CHECK(fs::exists(dir / "pre_impact.csv"));
    CHECK(fs::exists(dir / "post_impact.csv"));

    const ordered_json j = ordered_json::parse(read_bytes(dir / "report.json"));
    CHECK(j["scenario"] == "case1");
    CHECK(j["seed"] == 1);
    CHECK(j["feasible"] == true);
    CHECK(j["target"][0] == -0.3);
    CHECK(j["target"][1] == 1.0);
    CHECK(j["tolerance"] == 0.05);
    CHECK(j["strike"]["T"].get<double>() > 0.0);
    CHECK(j["strike"]["racket_velocity"].size() == 3);
    CHECK(j["landing"]["y"].get<double>() > 0.0);
    CHECK(j["landing"]["speed"].get<double>() > 0.0);
    CHECK(j["post_impact_spin"].size() == 3);
    CHECK(j["max_height"].get<double>() > 0.0);
    CHECK(j["cost"].get<double>() >= j["distance"].get<double>());
    CHECK(j["terms"][0]["kind"] == "landing_speed_bonus");
    CHECK(j["pso_history"].size() == 20);
    CHECK(j["plan_seconds"].get<double>() > 0.0);

    const std::string text = read_bytes(dir / "report.txt");
    CHECK(text.find("scenario") != std::string::npos);
    CHECK(text.find("feasible") != std::string::npos);
    CHECK(text.find("landing_xy") != std::string::npos);
}

TEST_CASE("seed overrides land in the report") {
    const fs::path dir = fresh_dir("seed");
    const int rc = run("plan " + scenario_file("case1.json") + " --seed 7 --out " +
                       dir.string());
    CHECK(rc == 0);
    const ordered_json j = ordered_json::parse(read_bytes(dir / "report.json"));
    CHECK(j["seed"] == 7);
}

TEST_CASE("repeat runs are byte-identical apart from wall time") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const fs::path c = fresh_dir("det_c");
    const std::string base = "plan " + scenario_file("case2.json") + " --seed 7";
    REQUIRE(run(base + " --out " + a.string()) == 0);
    REQUIRE(run(base + " --out " + b.string()) == 0);
    REQUIRE(run(base + " --parallel --out " + c.string()) == 0);

    for (const fs::path& other : {b, c}) {
        CHECK(drop_timing(read_bytes(a / "report.json")) ==
              drop_timing(read_bytes(other / "report.json")));
        CHECK(drop_timing(read_bytes(a / "report.txt")) ==
              drop_timing(read_bytes(other / "report.txt")));
        CHECK(read_bytes(a / "pre_impact.csv") ==
              read_bytes(other / "pre_impact.csv"));
        CHECK(read_bytes(a / "post_impact.csv") ==
              read_bytes(other / "post_impact.csv"));
    }
}

TEST_CASE("input problems map to distinct exit codes") {
    const fs::path dir = fresh_dir("errors");

    write_text(dir / "invalid.json", "{ nope");
    CHECK(run("plan " + (dir / "invalid.json").string()) == 4);

    write_text(dir / "bad_swarm.json", R"({
      "name": "x",
      "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
      "target": [0, 1],
      "pso": {"swarm_size": 0}
    })");
    CHECK(run("plan " + (dir / "bad_swarm.json").string()) == 3);

    CHECK(run("plan " + (dir / "missing.json").string()) == 4);
    CHECK(run("") != 0);
}

TEST_CASE("infeasible scenarios exit 2 but still report") {
    const fs::path dir = fresh_dir("infeasible");
    write_text(dir / "unreachable.json", R"({
      "name": "unreachable",
      "incoming": {"pos": [-0.2,-0.4,0], "vel": [0.5,-5,4], "spin": [10,10,10]},
      "target": [0, 1],
      "workspace": {"x": [5.0, 6.0]}
    })");
    const fs::path out = dir / "out";
    CHECK(run("plan " + (dir / "unreachable.json").string() + " --out " +
              out.string()) == 2);
    REQUIRE(fs::exists(out / "report.json"));
    const ordered_json j = ordered_json::parse(read_bytes(out / "report.json"));
    CHECK(j["feasible"] == false);
    CHECK(!j.contains("strike"));
    CHECK(!fs::exists(out / "post_impact.csv"));
}

TEST_CASE("replay recovers the landing from the exported CSV") {
    const fs::path dir = fresh_dir("replay");
    REQUIRE(run("plan " + scenario_file("case1.json") + " --out " +
                dir.string()) == 0);

    const fs::path log = dir / "replay.log";
    CHECK(run_capture("replay " + (dir / "post_impact.csv").string(), log) == 0);
    const std::string text = read_bytes(log);
    CHECK(text.find("landing_t") != std::string::npos);
    CHECK(text.find("landing_xy") != std::string::npos);

    // The pre-impact arc never comes back down to the table.
    CHECK(run("replay " + (dir / "pre_impact.csv").string()) == 2);
    CHECK(run("replay " + (dir / "nope.csv").string()) == 4);
}

TEST_CASE("suite runs every scenario in a directory") {
    const fs::path dir = fresh_dir("suite");
    const fs::path scenarios = dir / "scenarios";
    fs::create_directories(scenarios);
    fs::copy_file(scenario_file("case1.json"), scenarios / "case1.json");
    fs::copy_file(scenario_file("table1_row4.json"),
                  scenarios / "table1_row4.json");

    const fs::path out = dir / "out";
    const fs::path log = dir / "suite.log";
    const int rc = run_capture(
        "suite " + scenarios.string() + " --reps 2 --out " + out.string(), log);
    CHECK(rc == 0);

    REQUIRE(fs::exists(out / "suite_report.json"));
    CHECK(fs::exists(out / "suite_report.txt"));
    const ordered_json j =
        ordered_json::parse(read_bytes(out / "suite_report.json"));
    REQUIRE(j.size() == 2);
    for (const auto& row : j) {
        CHECK(row["runs"] == 2);
        CHECK(row["feasible"] == 2);
    }
    CHECK(j[0]["scenario"] == "case1");
    CHECK(j[1]["scenario"] == "table1_row4");

    for (const char* name : {"case1", "table1_row4"}) {
        for (int seed = 1; seed <= 2; ++seed) {
            const fs::path run_dir =
                out / name / ("seed_" + std::to_string(seed));
            CHECK(fs::exists(run_dir / "report.json"));
            CHECK(fs::exists(run_dir / "post_impact.csv"));
        }
    }

    const std::string table = read_bytes(out / "suite_report.txt");
    CHECK(table.find("scenario") != std::string::npos);
    CHECK(table.find("case1") != std::string::npos);

    // A directory with an unplannable scenario propagates exit 2.
    const fs::path bad = dir / "bad";
    fs::create_directories(bad);
    write_text(bad / "unreachable.json", R"({
      "name": "unreachable",
      "incoming": {"pos": [-0.2,-0.4,0], "vel": [0.5,-5,4], "spin": [10,10,10]},
      "target": [0, 1],
      "workspace": {"x": [5.0, 6.0]}
    })");
    CHECK(run("suite " + bad.string() + " --out " + (dir / "bad_out").string()) ==
          2);
}
