// Command-line front end. Everything goes through the public C API so this
// tool doubles as a consumer test of the shared library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <strikeplan.h>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitValidation = 3;
constexpr int kExitParse = 4;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string vec(const double v[3]) {
    return num(v[0]) + " " + num(v[1]) + " " + num(v[2]);
}

int exit_code_for(sp_status status) {
    switch (status) {
        case SP_OK: return kExitOk;
        case SP_ERR_PARSE: return kExitParse;
        case SP_ERR_VALIDATION: return kExitValidation;
        case SP_ERR_INFEASIBLE:
        case SP_ERR_NO_CROSSING: return kExitInfeasible;
        default: return kExitRuntime;
    }
}

int report_error(const std::string& context, sp_status status) {
    std::cerr << "error: " << context << ": " << sp_last_error() << "\n";
    return exit_code_for(status);
}

struct RunData {
    std::string scenario;
    uint64_t seed = 0;
    bool feasible = false;
    double target[2] = {0, 0};
    double tolerance = 0;
    double strike_T = 0;
    double racket[3] = {0, 0, 0};
    double landing[2] = {0, 0};
    double landing_t = 0;
    double landing_vel[3] = {0, 0, 0};
    double landing_speed = 0;
    double spin[3] = {0, 0, 0};
    double max_height = 0;
    double distance = 0;
    double cost = 0;
    std::vector<std::pair<std::string, double>> terms;
    std::vector<double> history;
    double plan_seconds = 0;
};

RunData collect(const sp_scenario* sc, const sp_result* res) {
    RunData d;
    d.scenario = sp_scenario_name(sc);
    d.seed = sp_result_seed(res);
    d.feasible = sp_result_feasible(res) != 0;
    sp_scenario_target(sc, &d.target[0], &d.target[1]);
    sp_scenario_tolerance(sc, &d.tolerance);
    d.plan_seconds = sp_result_plan_seconds(res);

    d.history.resize(sp_result_history_size(res));
    if (!d.history.empty()) {
        sp_result_history(res, d.history.data(), d.history.size());
    }
    if (!d.feasible) return d;

    d.cost = sp_result_cost(res);
    sp_result_strike(res, &d.strike_T, d.racket);
    sp_result_landing(res, &d.landing[0], &d.landing[1], &d.landing_t);
    sp_result_landing_velocity(res, d.landing_vel);
    d.landing_speed = std::sqrt(d.landing_vel[0] * d.landing_vel[0] +
                                d.landing_vel[1] * d.landing_vel[1] +
                                d.landing_vel[2] * d.landing_vel[2]);
    sp_result_post_impact_spin(res, d.spin);
    sp_result_max_height(res, &d.max_height);
    sp_result_distance(res, &d.distance);

    const size_t n = sp_result_term_count(res);
    for (size_t i = 0; i < n; ++i) {
        const char* name = nullptr;
        double value = 0;
        sp_result_term(res, i, &name, &value);
        d.terms.emplace_back(name, value);
    }
    return d;
}

std::string report_text(const RunData& d) {
    std::string out;
    const auto row = [&out](const std::string& label, const std::string& value) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%-26s", label.c_str());
        out += buf;
        out += value;
        out += '\n';
    };

    row("scenario", d.scenario);
    row("seed", std::to_string(d.seed));
    row("feasible", d.feasible ? "yes" : "no");
    row("target_xy", num(d.target[0]) + " " + num(d.target[1]));
    row("tolerance", num(d.tolerance));
    if (d.feasible) {
        row("strike_T", num(d.strike_T));
        row("racket_velocity", vec(d.racket));
        row("landing_xy", num(d.landing[0]) + " " + num(d.landing[1]));
        row("landing_t", num(d.landing_t));
        row("landing_velocity", vec(d.landing_vel));
        row("landing_speed", num(d.landing_speed));
        row("post_impact_spin", vec(d.spin));
        row("max_height", num(d.max_height));
        row("distance", num(d.distance));
        row("cost", num(d.cost));
        for (const auto& [name, value] : d.terms) {
            row("term:" + name, num(value));
        }
    }
    std::string hist;
    for (size_t i = 0; i < d.history.size(); ++i) {
        if (i) hist += ' ';
        hist += num(d.history[i]);
    }
    row("pso_history", hist);
    row("plan_seconds", num(d.plan_seconds));
    return out;
}

ordered_json report_json(const RunData& d) {
    ordered_json j;
    j["scenario"] = d.scenario;
    j["seed"] = d.seed;
    j["feasible"] = d.feasible;
    j["target"] = {d.target[0], d.target[1]};
    j["tolerance"] = d.tolerance;
    if (d.feasible) {
        j["strike"] = {{"T", d.strike_T},
                       {"racket_velocity", {d.racket[0], d.racket[1], d.racket[2]}}};
        j["landing"] = {{"x", d.landing[0]},
                        {"y", d.landing[1]},
                        {"t", d.landing_t},
                        {"velocity",
                         {d.landing_vel[0], d.landing_vel[1], d.landing_vel[2]}},
                        {"speed", d.landing_speed}};
        j["post_impact_spin"] = {d.spin[0], d.spin[1], d.spin[2]};
        j["max_height"] = d.max_height;
        j["distance"] = d.distance;
        j["cost"] = d.cost;
        j["terms"] = ordered_json::array();
        for (const auto& [name, value] : d.terms) {
            j["terms"].push_back({{"kind", name}, {"value", value}});
        }
    }
    j["pso_history"] = d.history;
    j["plan_seconds"] = d.plan_seconds;
    return j;
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    return out.good();
}

// Runs one scenario/seed and writes report.txt, report.json and (when
// feasible) the trajectory CSVs into out_dir.
int run_one(sp_scenario* sc, std::optional<uint64_t> seed, bool parallel,
            const fs::path& out_dir, RunData* collected, bool quiet) {
    sp_plan_options options;
    sp_plan_options_init(&options);
    if (seed) {
        options.seed = *seed;
        options.use_scenario_seed = 0;
    }
    options.parallel = parallel ? 1 : 0;

    sp_result* res = nullptr;
    const sp_status st = sp_plan(sc, &options, &res);
    if (st != SP_OK) return report_error("plan failed", st);

    const RunData d = collect(sc, res);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << out_dir << ": " << ec.message()
                  << "\n";
        sp_result_free(res);
        return kExitRuntime;
    }
    const std::string text = report_text(d);
    if (!write_file(out_dir / "report.txt", text) ||
        !write_file(out_dir / "report.json", report_json(d).dump(2) + "\n")) {
        std::cerr << "error: cannot write report into " << out_dir << "\n";
        sp_result_free(res);
        return kExitRuntime;
    }
    if (d.feasible) {
        const sp_status est =
            sp_export_trajectories(sc, res, out_dir.string().c_str());
        if (est != SP_OK) {
            sp_result_free(res);
            return report_error("trajectory export failed", est);
        }
    }
    sp_result_free(res);

    if (!quiet) std::cout << text;
    if (collected) *collected = d;
    return d.feasible ? kExitOk : kExitInfeasible;
}

int cmd_plan(const std::string& scenario_path, std::optional<uint64_t> seed,
             std::optional<std::string> out_dir, bool parallel) {
    sp_scenario* sc = nullptr;
    const sp_status st = sp_scenario_load(scenario_path.c_str(), &sc);
    if (st != SP_OK) return report_error("cannot load scenario", st);

    uint64_t effective_seed = 0;
    sp_scenario_seed(sc, &effective_seed);
    if (seed) effective_seed = *seed;

    const fs::path dir =
        out_dir ? fs::path(*out_dir)
                : fs::path("out") / sp_scenario_name(sc) /
                      ("seed_" + std::to_string(effective_seed));
    const int rc = run_one(sc, seed, parallel, dir, nullptr, false);
    sp_scenario_free(sc);
    return rc;
}

struct SuiteRow {
    std::string scenario;
    size_t runs = 0;
    size_t feasible = 0;
    size_t hits = 0;
    std::vector<double> costs;      // feasible runs only
    std::vector<double> distances;  // feasible runs only
    std::vector<double> times;
};

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const size_t mid = v.size() / 2;
    if (v.size() % 2) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

std::string suite_table(const std::vector<SuiteRow>& rows) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-16s %5s %9s %5s %6s %12s %12s %14s\n",
                  "scenario", "runs", "feasible", "hits", "rate", "median_cost",
                  "median_dist", "median_plan_s");
    out += buf;
    for (const SuiteRow& r : rows) {
        const double rate =
            r.runs ? static_cast<double>(r.hits) / static_cast<double>(r.runs)
                   : 0.0;
        std::snprintf(buf, sizeof(buf), "%-16s %5zu %9zu %5zu %6.3f %12s %12s %14s\n",
                      r.scenario.c_str(), r.runs, r.feasible, r.hits, rate,
                      num(median(r.costs)).c_str(), num(median(r.distances)).c_str(),
                      num(median(r.times)).c_str());
        out += buf;
    }
    return out;
}

int cmd_suite(const std::string& dir, size_t reps, uint64_t seed_base,
              const std::string& out_root, bool parallel) {
    std::vector<fs::path> paths;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json") paths.push_back(entry.path());
    }
    if (ec) {
        std::cerr << "error: cannot read directory " << dir << ": "
                  << ec.message() << "\n";
        return kExitRuntime;
    }
    std::sort(paths.begin(), paths.end());

    std::vector<SuiteRow> rows;
    bool any_infeasible = false;
    for (const fs::path& path : paths) {
        sp_scenario* sc = nullptr;
        const sp_status st = sp_scenario_load(path.string().c_str(), &sc);
        if (st != SP_OK) {
            return report_error("cannot load " + path.string(), st);
        }

        SuiteRow row;
        row.scenario = sp_scenario_name(sc);
        double tolerance = 0;
        sp_scenario_tolerance(sc, &tolerance);

        for (size_t rep = 0; rep < reps; ++rep) {
            const uint64_t seed = seed_base + rep;
            const fs::path run_dir = fs::path(out_root) / row.scenario /
                                     ("seed_" + std::to_string(seed));
            RunData d;
            const int rc = run_one(sc, seed, parallel, run_dir, &d, true);
            if (rc != kExitOk && rc != kExitInfeasible) {
                sp_scenario_free(sc);
                return rc;
            }
            ++row.runs;
            row.times.push_back(d.plan_seconds);
            if (d.feasible) {
                ++row.feasible;
                row.costs.push_back(d.cost);
                row.distances.push_back(d.distance);
                if (d.distance <= tolerance) ++row.hits;
            } else {
                any_infeasible = true;
            }
        }
        rows.push_back(std::move(row));
        sp_scenario_free(sc);
    }

    const std::string table = suite_table(rows);
    std::cout << table;

    fs::create_directories(out_root, ec);
    if (!write_file(fs::path(out_root) / "suite_report.txt", table)) {
        std::cerr << "error: cannot write suite report\n";
        return kExitRuntime;
    }
    ordered_json j = ordered_json::array();
    for (const SuiteRow& r : rows) {
        j.push_back({{"scenario", r.scenario},
                     {"runs", r.runs},
                     {"feasible", r.feasible},
                     {"hits", r.hits},
                     {"median_cost", median(r.costs)},
                     {"median_dist", median(r.distances)},
                     {"median_plan_s", median(r.times)}});
    }
    if (!write_file(fs::path(out_root) / "suite_report.json", j.dump(2) + "\n")) {
        std::cerr << "error: cannot write suite report\n";
        return kExitRuntime;
    }
    return any_infeasible ? kExitInfeasible : kExitOk;
}

int cmd_replay(const std::string& csv_path) {
    double t = 0, x = 0, y = 0;
    const sp_status st = sp_replay_landing(csv_path.c_str(), &t, &x, &y);
    if (st != SP_OK) return report_error("replay failed", st);
    std::cout << "landing_t  " << num(t) << "\n"
              << "landing_xy " << num(x) << " " << num(y) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strikeplan: table-tennis strike planner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    bool parallel = false;

    CLI::App* plan = app.add_subcommand("plan", "plan one scenario");
    plan->add_option("scenario", scenario_path, "scenario JSON file")->required();
    plan->add_option("--seed", seed, "override the scenario seed");
    plan->add_option("--out", out_dir, "output directory");
    plan->add_flag("--parallel", parallel, "evaluate the swarm on worker threads");

    std::string suite_dir;
    size_t reps = 1;
    uint64_t seed_base = 1;
    std::string suite_out = "out";

    CLI::App* suite = app.add_subcommand("suite", "run every scenario in a directory");
    suite->add_option("dir", suite_dir, "directory of scenario JSON files")
        ->required();
    suite->add_option("--reps", reps, "repetitions per scenario")
        ->check(CLI::PositiveNumber);
    suite->add_option("--seed-base", seed_base, "seed of the first repetition");
    suite->add_option("--out", suite_out, "output root directory");
    suite->add_flag("--parallel", parallel,
                    "evaluate the swarm on worker threads");

    std::string csv_path;
    CLI::App* replay =
        app.add_subcommand("replay", "re-derive the landing from a trajectory CSV");
    replay->add_option("trajectory", csv_path, "trajectory CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) return cmd_plan(scenario_path, seed, out_dir, parallel);
    if (suite->parsed()) return cmd_suite(suite_dir, reps, seed_base, suite_out, parallel);
    if (replay->parsed()) return cmd_replay(csv_path);
    return kExitRuntime;
}
