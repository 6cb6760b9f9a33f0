#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "strikeplan/scenario.hpp"

using namespace strikeplan;
using scenario::ParseError;
using scenario::Scenario;
using scenario::ValidationError;

namespace {

const std::string kMinimal = R"({
  "name": "minimal",
  "incoming": {"pos": [0, -1, 0], "vel": [0, -3, 3], "spin": [0, 0, 0]},
  "target": [0, 1]
})";

}  // namespace

TEST_CASE("a minimal scenario picks up every default") {
    const Scenario s = scenario::parse_scenario(kMinimal);
    CHECK(s.name == "minimal");
    CHECK(s.seed == 1);
    CHECK(s.tolerance == 0.05);
    CHECK(s.incoming.t == 0.0);
    CHECK(s.incoming.pos == Vec3{0, -1, 0});
    CHECK(s.cost.x_t == 0.0);
    CHECK(s.cost.y_t == 1.0);
    CHECK(s.cost.terms.empty());
    CHECK(s.physics.K_v == 0.7);
    CHECK(s.physics.e == 0.8);
    CHECK(s.physics.drag_mode == DragMode::linear);
    CHECK(s.physics.net_height == 0.15);
    CHECK(s.table.net_height == 0.15);
    CHECK(s.workspace.y.hi == 0.0);
    CHECK(s.pso.swarm_size == 10);
    CHECK(s.pso.iterations == 20);
    CHECK(s.pso.c1 == 1.5);
    CHECK(s.pso.c2 == 1.5);
    CHECK(s.pso.w == 0.6);
    CHECK(!s.pso.per_dimension_r);
    CHECK(s.pso.seed == s.seed);
    CHECK(s.pso.bounds.empty());
}

TEST_CASE("the net height lives under table and feeds the physics") {
    Scenario s = scenario::parse_scenario(R"({
      "name": "net",
      "incoming": {"pos": [0, -1, 0], "vel": [0, -3, 3], "spin": [0, 0, 0]},
      "target": [0, 1],
      "table": {"net_height": 0.2}
    })");
    CHECK(s.table.net_height == 0.2);
    CHECK(s.physics.net_height == 0.2);
}

TEST_CASE("serialization round-trips exactly") {
    const Scenario s = scenario::parse_scenario(kMinimal);
    const std::string canon = scenario::scenario_to_json(s);
    const Scenario s2 = scenario::parse_scenario(canon);
    CHECK(scenario::scenario_to_json(s2) == canon);

    const Scenario fx =
        scenario::load_scenario(std::string(SCENARIO_DIR) + "/case3.json");
    const std::string fx_canon = scenario::scenario_to_json(fx);
    CHECK(scenario::scenario_to_json(scenario::parse_scenario(fx_canon)) ==
          fx_canon);
}

TEST_CASE("parse errors carry exact locations") {
    using scenario::parse_scenario;
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"incoming": {}, "target": [0, 1]})"),
        "name is required and must be a string", ParseError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"name": "x", "target": [0, 1]})"),
                         "incoming is required", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]}})"),
        "target is required", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1], "targets": 3})"),
        "unknown key \"targets\" in scenario", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1], "physics": {"drag": "cubic"}})"),
        "physics.drag must be \"linear\" or \"quadratic\"", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x", "seed": -3,
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1]})"),
        "seed must be a non-negative integer", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1],
                "terms": [{"kind": "spin_x_bonus", "weight": 1, "weight2": 1}]})"),
        "terms[0].weight2 only applies to flatness", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1, 2]})"),
        "target must be an array of 2 numbers [x_t, y_t]", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1]})"),
        "incoming.pos must be an array of 3 numbers", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1],
                "terms": [{"kind": "leading_bonus", "weight": 1}]})"),
        "terms[0].kind \"leading_bonus\" is unknown", ParseError);
    CHECK_THROWS_WITH(scenario::parse_scenario("{ nope"),
                      doctest::Contains("invalid JSON"));
}

TEST_CASE("structurally valid but inconsistent values fail validation") {
    using scenario::parse_scenario;
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, 1], "pso": {"swarm_size": 0}})"),
        "pso.swarm_size must be >= 1", ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"name": "x",
                "incoming": {"pos": [0,-1,0], "vel": [0,-3,3], "spin": [0,0,0]},
                "target": [0, -0.5]})"),
        "target[1] must be >= 0 (opponent side)", ValidationError);

    Scenario s = parse_scenario(kMinimal);
    SUBCASE("restitution range") {
        s.physics.e = 1.2;
        CHECK_THROWS_WITH_AS(scenario::validate(s), "physics.e must be in (0, 1]",
                             ValidationError);
        s.physics.e = 0.0;
        CHECK_THROWS_WITH_AS(scenario::validate(s), "physics.e must be in (0, 1]",
                             ValidationError);
    }
    SUBCASE("gravity must pull") {
        s.physics.g = 0.0;
        CHECK_THROWS_WITH_AS(scenario::validate(s), "physics.g must be > 0",
                             ValidationError);
    }
    SUBCASE("linear drag needs a positive rate") {
        s.physics.K_v = 0.0;
        CHECK_THROWS_WITH_AS(scenario::validate(s),
                             "physics.K_v must be > 0 for linear drag",
                             ValidationError);
    }
    SUBCASE("degenerate workspace") {
        s.workspace.x = {1.0, 1.0};
        CHECK_THROWS_WITH_AS(scenario::validate(s),
                             "workspace.x must satisfy lo < hi", ValidationError);
    }
    SUBCASE("tolerance") {
        s.tolerance = 0.0;
        CHECK_THROWS_WITH_AS(scenario::validate(s), "tolerance must be > 0",
                             ValidationError);
    }
}

TEST_CASE("load errors name the file") {
    try {
        scenario::load_scenario("/nonexistent/nowhere.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("cannot open scenario file") != std::string::npos);
        CHECK(msg.find("/nonexistent/nowhere.json") != std::string::npos);
    }
}

TEST_CASE("bundled fixtures load with their pinned settings") {
    const Scenario c1 =
        scenario::load_scenario(std::string(SCENARIO_DIR) + "/case1.json");
    CHECK(c1.name == "case1");
    CHECK(c1.seed == 1);
    CHECK(c1.tolerance == 0.05);
    CHECK(c1.cost.x_t == -0.3);
    CHECK(c1.cost.y_t == 1.0);
    CHECK(c1.pso.per_dimension_r);
    CHECK(c1.pso.swarm_size == 10);
    REQUIRE(c1.cost.terms.size() == 1);
    CHECK(c1.cost.terms[0].kind == planner::TermKind::landing_speed_bonus);

    const Scenario c3 =
        scenario::load_scenario(std::string(SCENARIO_DIR) + "/case3.json");
    CHECK(c3.physics.cap_slip_reversal);
    CHECK(c3.pso.swarm_size == 20);
    CHECK(c3.pso.iterations == 40);
}

TEST_CASE("run_scenario is deterministic and honors seed overrides") {
    const Scenario s = scenario::parse_scenario(kMinimal);

    const auto a = scenario::run_scenario(s);
    const auto b = scenario::run_scenario(s);
    CHECK(a.seed == 1);
    REQUIRE(a.plan.feasible == b.plan.feasible);
    CHECK(a.plan.cost == b.plan.cost);
    CHECK(a.plan.landing_x == b.plan.landing_x);
    CHECK(a.plan.landing_y == b.plan.landing_y);
    CHECK(a.plan.pso_history == b.plan.pso_history);

    scenario::RunOptions opt;
    opt.seed = 7;
    const auto c = scenario::run_scenario(s, opt);
    CHECK(c.seed == 7);

    scenario::RunOptions par;
    par.eval_mode = pso::EvalMode::parallel;
    const auto d = scenario::run_scenario(s, par);
    CHECK(d.plan.cost == a.plan.cost);
    CHECK(d.plan.pso_history == a.plan.pso_history);
}
