#include "strikeplan/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace strikeplan::scenario {
namespace {

using ordered_json = nlohmann::ordered_json;

// Rejects unknown keys so typos fail loudly instead of silently keeping a
// default.
void check_keys(const ordered_json& j, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (std::string_view k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

const ordered_json& expect_object(const ordered_json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + " must be an object");
    return j;
}

double get_number(const ordered_json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(where + " must be finite");
    return v;
}

Vec3 get_vec3(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError(where + " must be an array of 3 numbers");
    }
    return {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]"),
            get_number(j[2], where + "[2]")};
}

planner::AxisRange get_range(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(where + " must be an array of 2 numbers");
    }
    return {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]")};
}

void parse_physics(const ordered_json& j, PhysicsParams& p) {
    expect_object(j, "physics");
    check_keys(j, "physics",
               {"K_v", "k_d", "k_m", "g", "e", "mu_k", "radius", "drag",
                "cap_slip_reversal"});
    if (j.contains("K_v")) p.K_v = get_number(j["K_v"], "physics.K_v");
    if (j.contains("k_d")) p.k_d = get_number(j["k_d"], "physics.k_d");
    if (j.contains("k_m")) p.k_m = get_number(j["k_m"], "physics.k_m");
    if (j.contains("g")) p.g = get_number(j["g"], "physics.g");
    if (j.contains("e")) p.e = get_number(j["e"], "physics.e");
    if (j.contains("mu_k")) p.mu_k = get_number(j["mu_k"], "physics.mu_k");
    if (j.contains("radius")) p.r = get_number(j["radius"], "physics.radius");
    if (j.contains("drag")) {
        if (!j["drag"].is_string()) {
            throw ParseError("physics.drag must be \"linear\" or \"quadratic\"");
        }
        const std::string mode = j["drag"].get<std::string>();
        if (mode == "linear") {
            p.drag_mode = DragMode::linear;
        } else if (mode == "quadratic") {
            p.drag_mode = DragMode::quadratic;
        } else {
            throw ParseError("physics.drag must be \"linear\" or \"quadratic\"");
        }
    }
    if (j.contains("cap_slip_reversal")) {
        if (!j["cap_slip_reversal"].is_boolean()) {
            throw ParseError("physics.cap_slip_reversal must be a boolean");
        }
        p.cap_slip_reversal = j["cap_slip_reversal"].get<bool>();
    }
}

void parse_table(const ordered_json& j, planner::TableGeometry& t,
                 PhysicsParams& p) {
    expect_object(j, "table");
    check_keys(j, "table", {"length", "width", "net_height"});
    if (j.contains("length")) t.length = get_number(j["length"], "table.length");
    if (j.contains("width")) t.width = get_number(j["width"], "table.width");
    if (j.contains("net_height")) {
        t.net_height = get_number(j["net_height"], "table.net_height");
    }
    p.net_height = t.net_height;
}

void parse_workspace(const ordered_json& j, planner::Workspace& ws) {
    expect_object(j, "workspace");
    check_keys(j, "workspace", {"x", "y", "z", "v_limit"});
    if (j.contains("x")) ws.x = get_range(j["x"], "workspace.x");
    if (j.contains("y")) ws.y = get_range(j["y"], "workspace.y");
    if (j.contains("z")) ws.z = get_range(j["z"], "workspace.z");
    if (j.contains("v_limit")) {
        ws.v_limit = get_vec3(j["v_limit"], "workspace.v_limit");
    }
}

void parse_pso(const ordered_json& j, pso::PsoConfig& cfg) {
    expect_object(j, "pso");
    check_keys(j, "pso",
               {"swarm_size", "iterations", "c1", "c2", "w", "per_dimension_r"});
    if (j.contains("swarm_size")) {
        if (!j["swarm_size"].is_number_unsigned()) {
            throw ParseError("pso.swarm_size must be a positive integer");
        }
        cfg.swarm_size = j["swarm_size"].get<std::size_t>();
    }
    if (j.contains("iterations")) {
        if (!j["iterations"].is_number_unsigned()) {
            throw ParseError("pso.iterations must be a positive integer");
        }
        cfg.iterations = j["iterations"].get<std::size_t>();
    }
    if (j.contains("c1")) cfg.c1 = get_number(j["c1"], "pso.c1");
    if (j.contains("c2")) cfg.c2 = get_number(j["c2"], "pso.c2");
    if (j.contains("w")) cfg.w = get_number(j["w"], "pso.w");
    if (j.contains("per_dimension_r")) {
        if (!j["per_dimension_r"].is_boolean()) {
            throw ParseError("pso.per_dimension_r must be a boolean");
        }
        cfg.per_dimension_r = j["per_dimension_r"].get<bool>();
    }
}

void parse_terms(const ordered_json& j, std::vector<planner::SecondaryTerm>& terms) {
    if (!j.is_array()) throw ParseError("terms must be an array");
    terms.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "terms[" + std::to_string(i) + "]";
        expect_object(j[i], where);
        check_keys(j[i], where, {"kind", "weight", "weight2"});
        if (!j[i].contains("kind") || !j[i]["kind"].is_string()) {
            throw ParseError(where + ".kind must be a string");
        }
        const std::string kind_name = j[i]["kind"].get<std::string>();
        const auto kind = planner::parse_term_kind(kind_name);
        if (!kind) {
            throw ParseError(where + ".kind \"" + kind_name + "\" is unknown");
        }
        planner::SecondaryTerm term{*kind, 0.0, 0.0};
        if (!j[i].contains("weight")) {
            throw ParseError(where + ".weight is required");
        }
        term.weight = get_number(j[i]["weight"], where + ".weight");
        if (j[i].contains("weight2")) {
            if (*kind != planner::TermKind::flatness) {
                throw ParseError(where + ".weight2 only applies to flatness");
            }
            term.weight2 = get_number(j[i]["weight2"], where + ".weight2");
        }
        terms.push_back(term);
    }
}

ordered_json vec3_json(const Vec3& v) {
    return ordered_json::array({v.x, v.y, v.z});
}

ordered_json range_json(const planner::AxisRange& r) {
    return ordered_json::array({r.lo, r.hi});
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    expect_object(j, "scenario");
    check_keys(j, "scenario",
               {"name", "seed", "tolerance", "incoming", "target", "terms",
                "physics", "table", "workspace", "pso"});

    Scenario s;
    if (!j.contains("name") || !j["name"].is_string()) {
        throw ParseError("name is required and must be a string");
    }
    s.name = j["name"].get<std::string>();

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ParseError("seed must be a non-negative integer");
        }
        s.seed = j["seed"].get<unsigned long long>();
    }
    if (j.contains("tolerance")) {
        s.tolerance = get_number(j["tolerance"], "tolerance");
    }

    if (!j.contains("incoming")) throw ParseError("incoming is required");
    expect_object(j["incoming"], "incoming");
    check_keys(j["incoming"], "incoming", {"pos", "vel", "spin"});
    for (const char* k : {"pos", "vel", "spin"}) {
        if (!j["incoming"].contains(k)) {
            throw ParseError(std::string("incoming.") + k + " is required");
        }
    }
    s.incoming.t = 0.0;
    s.incoming.pos = get_vec3(j["incoming"]["pos"], "incoming.pos");
    s.incoming.vel = get_vec3(j["incoming"]["vel"], "incoming.vel");
    s.incoming.spin = get_vec3(j["incoming"]["spin"], "incoming.spin");

    if (!j.contains("target")) throw ParseError("target is required");
    if (!j["target"].is_array() || j["target"].size() != 2) {
        throw ParseError("target must be an array of 2 numbers [x_t, y_t]");
    }
    s.cost.x_t = get_number(j["target"][0], "target[0]");
    s.cost.y_t = get_number(j["target"][1], "target[1]");

    if (j.contains("terms")) parse_terms(j["terms"], s.cost.terms);
    if (j.contains("physics")) parse_physics(j["physics"], s.physics);
    if (j.contains("table")) parse_table(j["table"], s.table, s.physics);
    if (j.contains("workspace")) parse_workspace(j["workspace"], s.workspace);
    if (j.contains("pso")) parse_pso(j["pso"], s.pso);
    s.pso.seed = s.seed;

    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void validate(const Scenario& s) {
    const auto fail = [](const std::string& msg) { throw ValidationError(msg); };

    if (s.name.empty()) fail("name must not be empty");
    if (!(s.tolerance > 0.0)) fail("tolerance must be > 0");

    if (!s.incoming.is_finite()) fail("incoming state must be finite");

    const PhysicsParams& p = s.physics;
    if (!(p.g > 0.0)) fail("physics.g must be > 0");
    if (!(p.e > 0.0) || p.e > 1.0) fail("physics.e must be in (0, 1]");
    if (p.mu_k < 0.0) fail("physics.mu_k must be >= 0");
    if (!(p.r > 0.0)) fail("physics.radius must be > 0");
    if (p.k_m < 0.0) fail("physics.k_m must be >= 0");
    if (p.net_height < 0.0) fail("table.net_height must be >= 0");
    if (p.drag_mode == DragMode::linear) {
        if (!(p.K_v > 0.0)) fail("physics.K_v must be > 0 for linear drag");
    } else {
        if (p.k_d < 0.0) fail("physics.k_d must be >= 0");
    }

    if (!(s.table.length > 0.0)) fail("table.length must be > 0");
    if (!(s.table.width > 0.0)) fail("table.width must be > 0");

    const planner::Workspace& ws = s.workspace;
    if (!(ws.x.lo < ws.x.hi)) fail("workspace.x must satisfy lo < hi");
    if (!(ws.y.lo < ws.y.hi)) fail("workspace.y must satisfy lo < hi");
    if (!(ws.z.lo < ws.z.hi)) fail("workspace.z must satisfy lo < hi");
    if (!(ws.v_limit.x > 0.0) || !(ws.v_limit.y > 0.0) || !(ws.v_limit.z > 0.0)) {
        fail("workspace.v_limit components must be > 0");
    }

    if (s.cost.y_t < 0.0) fail("target[1] must be >= 0 (opponent side)");
    for (std::size_t i = 0; i < s.cost.terms.size(); ++i) {
        const planner::SecondaryTerm& t = s.cost.terms[i];
        const std::string where = "terms[" + std::to_string(i) + "]";
        if (t.weight < 0.0) fail(where + ".weight must be >= 0");
        if (t.weight2 < 0.0) fail(where + ".weight2 must be >= 0");
    }

    if (s.pso.swarm_size < 1) fail("pso.swarm_size must be >= 1");
    if (s.pso.iterations < 1) fail("pso.iterations must be >= 1");
    if (s.pso.c1 < 0.0 || s.pso.c2 < 0.0) fail("pso.c1 and pso.c2 must be >= 0");
    if (!std::isfinite(s.pso.w)) fail("pso.w must be finite");
}

std::string scenario_to_json(const Scenario& s) {
    ordered_json j;
    j["name"] = s.name;
    j["seed"] = s.seed;
    j["tolerance"] = s.tolerance;
    j["incoming"] = {{"pos", vec3_json(s.incoming.pos)},
                     {"vel", vec3_json(s.incoming.vel)},
                     {"spin", vec3_json(s.incoming.spin)}};
    j["target"] = ordered_json::array({s.cost.x_t, s.cost.y_t});
    j["terms"] = ordered_json::array();
    for (const planner::SecondaryTerm& t : s.cost.terms) {
        ordered_json jt;
        jt["kind"] = planner::term_kind_name(t.kind);
        jt["weight"] = t.weight;
        if (t.kind == planner::TermKind::flatness) jt["weight2"] = t.weight2;
        j["terms"].push_back(jt);
    }
    j["physics"] = {
        {"K_v", s.physics.K_v},
        {"k_d", s.physics.k_d},
        {"k_m", s.physics.k_m},
        {"g", s.physics.g},
        {"e", s.physics.e},
        {"mu_k", s.physics.mu_k},
        {"radius", s.physics.r},
        {"drag", s.physics.drag_mode == DragMode::linear ? "linear" : "quadratic"},
        {"cap_slip_reversal", s.physics.cap_slip_reversal},
    };
    j["table"] = {{"length", s.table.length},
                  {"width", s.table.width},
                  {"net_height", s.table.net_height}};
    j["workspace"] = {{"x", range_json(s.workspace.x)},
                      {"y", range_json(s.workspace.y)},
                      {"z", range_json(s.workspace.z)},
                      {"v_limit", vec3_json(s.workspace.v_limit)}};
    j["pso"] = {{"swarm_size", s.pso.swarm_size},
                {"iterations", s.pso.iterations},
                {"c1", s.pso.c1},
                {"c2", s.pso.c2},
                {"w", s.pso.w},
                {"per_dimension_r", s.pso.per_dimension_r}};
    return j.dump(2) + "\n";
}

RunOutcome run_scenario(const Scenario& s, const RunOptions& options) {
    RunOutcome out;
    out.seed = options.seed.value_or(s.seed);

    pso::PsoConfig cfg = s.pso;
    cfg.seed = out.seed;
    cfg.eval_mode = options.eval_mode;

    const auto t0 = std::chrono::steady_clock::now();
    out.plan = planner::plan_strike(s.incoming, s.cost, s.workspace, s.table,
                                    s.physics, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    out.plan_seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

}  // namespace strikeplan::scenario
