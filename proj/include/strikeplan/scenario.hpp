#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "strikeplan/ball.hpp"
#include "strikeplan/planner.hpp"
#include "strikeplan/pso.hpp"

namespace strikeplan::scenario {

/// Malformed JSON, missing required fields, wrong types, unknown keys,
/// or an unreadable file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally valid input whose values violate a model invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A complete planning problem. Every section except name, incoming and
/// target is optional in the JSON form and falls back to the defaults
/// below.
struct Scenario {
    std::string name;
    unsigned long long seed = 1;
    double tolerance = 0.05;  ///< acceptance radius around the target, m
    BallState incoming;       ///< state at the bounce on the robot side, t = 0
    planner::CostSpec cost;
    planner::TableGeometry table;
    planner::Workspace workspace;
    PhysicsParams physics;
    pso::PsoConfig pso;  ///< bounds left empty; the planner derives them
};

/// Parses and validates scenario JSON text.
Scenario parse_scenario(const std::string& json_text);

/// Reads, parses and validates a scenario file.
Scenario load_scenario(const std::filesystem::path& path);

/// Re-checks the invariants parse_scenario enforces; useful after
/// programmatic edits. Throws ValidationError.
void validate(const Scenario& s);

/// Serializes a scenario back to JSON (stable key order, 2-space indent).
/// parse_scenario(scenario_to_json(s)) reproduces s exactly.
std::string scenario_to_json(const Scenario& s);

struct RunOptions {
    std::optional<unsigned long long> seed;  ///< overrides Scenario::seed
    pso::EvalMode eval_mode = pso::EvalMode::serial;
};

struct RunOutcome {
    planner::PlanResult plan;
    unsigned long long seed = 0;  ///< seed actually used
    double plan_seconds = 0.0;    ///< wall time of the plan_strike call
};

/// Plans the scenario once and reports the wall time of the solve.
RunOutcome run_scenario(const Scenario& s, const RunOptions& options = {});

}  // namespace strikeplan::scenario
