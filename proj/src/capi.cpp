#include "strikeplan.h"

#include <cstring>
#include <exception>
#include <limits>
#include <string>

#include "strikeplan/planner.hpp"
#include "strikeplan/scenario.hpp"
#include "strikeplan/trajectory.hpp"

struct sp_scenario {
    strikeplan::scenario::Scenario scenario;
    std::string json_cache;
};

struct sp_result {
    strikeplan::scenario::RunOutcome run;
};

namespace {

thread_local std::string t_last_error = "no error";

sp_status fail(sp_status status, const std::string& message) {
    t_last_error = message;
    return status;
}

// Maps the C++ error taxonomy onto sp_status. Call inside a catch block.
sp_status fail_current() {
    try {
        throw;
    } catch (const strikeplan::scenario::ParseError& e) {
        return fail(SP_ERR_PARSE, e.what());
    } catch (const strikeplan::scenario::ValidationError& e) {
        return fail(SP_ERR_VALIDATION, e.what());
    } catch (const strikeplan::trajectory::CsvError& e) {
        return fail(SP_ERR_PARSE, e.what());
    } catch (const strikeplan::trajectory::IoError& e) {
        return fail(SP_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SP_ERR_INVALID_ARG, e.what());
    } catch (const std::domain_error& e) {
        return fail(SP_ERR_INVALID_ARG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SP_ERR_INTERNAL, "unknown error");
    }
}

sp_status require_feasible(const sp_result* r) {
    if (!r) return fail(SP_ERR_INVALID_ARG, "result handle is null");
    if (!r->run.plan.feasible) {
        return fail(SP_ERR_INFEASIBLE, "result holds no feasible plan");
    }
    return SP_OK;
}

void copy3(double out[3], const strikeplan::Vec3& v) {
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
}

}  // namespace

extern "C" {

const char* sp_version(void) { return "0.1.0"; }

const char* sp_status_name(sp_status status) {
    switch (status) {
        case SP_OK: return "SP_OK";
        case SP_ERR_INVALID_ARG: return "SP_ERR_INVALID_ARG";
        case SP_ERR_PARSE: return "SP_ERR_PARSE";
        case SP_ERR_VALIDATION: return "SP_ERR_VALIDATION";
        case SP_ERR_IO: return "SP_ERR_IO";
        case SP_ERR_INFEASIBLE: return "SP_ERR_INFEASIBLE";
        case SP_ERR_NO_CROSSING: return "SP_ERR_NO_CROSSING";
        case SP_ERR_INTERNAL: return "SP_ERR_INTERNAL";
    }
    return "SP_ERR_UNKNOWN";
}

const char* sp_last_error(void) { return t_last_error.c_str(); }

sp_status sp_scenario_load(const char* path, sp_scenario** out) {
    if (!path || !out) return fail(SP_ERR_INVALID_ARG, "path and out required");
    *out = nullptr;
    try {
        auto handle = new sp_scenario{strikeplan::scenario::load_scenario(path), {}};
        *out = handle;
        return SP_OK;
    } catch (...) {
        return fail_current();
    }
}

sp_status sp_scenario_parse(const char* json_text, sp_scenario** out) {
    if (!json_text || !out) {
        return fail(SP_ERR_INVALID_ARG, "json_text and out required");
    }
    *out = nullptr;
    try {
        auto handle =
            new sp_scenario{strikeplan::scenario::parse_scenario(json_text), {}};
        *out = handle;
        return SP_OK;
    } catch (...) {
        return fail_current();
    }
}

void sp_scenario_free(sp_scenario* s) { delete s; }

const char* sp_scenario_name(const sp_scenario* s) {
    return s ? s->scenario.name.c_str() : nullptr;
}

const char* sp_scenario_json(sp_scenario* s) {
    if (!s) return nullptr;
    try {
        s->json_cache = strikeplan::scenario::scenario_to_json(s->scenario);
        return s->json_cache.c_str();
    } catch (...) {
        fail_current();
        return nullptr;
    }
}

sp_status sp_scenario_seed(const sp_scenario* s, uint64_t* seed) {
    if (!s || !seed) return fail(SP_ERR_INVALID_ARG, "scenario and seed required");
    *seed = s->scenario.seed;
    return SP_OK;
}

sp_status sp_scenario_tolerance(const sp_scenario* s, double* tolerance) {
    if (!s || !tolerance) {
        return fail(SP_ERR_INVALID_ARG, "scenario and tolerance required");
    }
    *tolerance = s->scenario.tolerance;
    return SP_OK;
}

sp_status sp_scenario_target(const sp_scenario* s, double* x, double* y) {
    if (!s || !x || !y) {
        return fail(SP_ERR_INVALID_ARG, "scenario, x and y required");
    }
    *x = s->scenario.cost.x_t;
    *y = s->scenario.cost.y_t;
    return SP_OK;
}

void sp_plan_options_init(sp_plan_options* options) {
    if (!options) return;
    options->seed = 0;
    options->use_scenario_seed = 1;
    options->parallel = 0;
}

sp_status sp_plan(const sp_scenario* s, const sp_plan_options* options,
                  sp_result** out) {
    if (!s || !out) return fail(SP_ERR_INVALID_ARG, "scenario and out required");
    *out = nullptr;

    strikeplan::scenario::RunOptions run_options;
    if (options) {
        if (!options->use_scenario_seed) run_options.seed = options->seed;
        if (options->parallel) {
            run_options.eval_mode = strikeplan::pso::EvalMode::parallel;
        }
    }
    try {
        auto handle = new sp_result{
            strikeplan::scenario::run_scenario(s->scenario, run_options)};
        *out = handle;
        return SP_OK;
    } catch (...) {
        return fail_current();
    }
}

void sp_result_free(sp_result* r) { delete r; }

int sp_result_feasible(const sp_result* r) {
    return (r && r->run.plan.feasible) ? 1 : 0;
}

double sp_result_cost(const sp_result* r) {
    return r ? r->run.plan.cost : std::numeric_limits<double>::quiet_NaN();
}

double sp_result_plan_seconds(const sp_result* r) {
    return r ? r->run.plan_seconds : 0.0;
}

uint64_t sp_result_seed(const sp_result* r) { return r ? r->run.seed : 0; }

sp_status sp_result_strike(const sp_result* r, double* strike_time,
                           double racket_velocity[3]) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (!strike_time || !racket_velocity) {
        return fail(SP_ERR_INVALID_ARG, "output pointers required");
    }
    *strike_time = r->run.plan.strike.T;
    racket_velocity[0] = r->run.plan.strike.racket.v_xr;
    racket_velocity[1] = r->run.plan.strike.racket.v_yr;
    racket_velocity[2] = r->run.plan.strike.racket.v_zr;
    return SP_OK;
}

sp_status sp_result_landing(const sp_result* r, double* x, double* y, double* t) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (x) *x = r->run.plan.landing_x;
    if (y) *y = r->run.plan.landing_y;
    if (t) *t = r->run.plan.landing_state.t;
    return SP_OK;
}

sp_status sp_result_landing_velocity(const sp_result* r, double vel[3]) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (!vel) return fail(SP_ERR_INVALID_ARG, "vel required");
    copy3(vel, r->run.plan.landing_state.vel);
    return SP_OK;
}

sp_status sp_result_post_impact_spin(const sp_result* r, double spin[3]) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (!spin) return fail(SP_ERR_INVALID_ARG, "spin required");
    copy3(spin, r->run.plan.post_impact.spin);
    return SP_OK;
}

sp_status sp_result_max_height(const sp_result* r, double* height) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (!height) return fail(SP_ERR_INVALID_ARG, "height required");
    *height = r->run.plan.max_height;
    return SP_OK;
}

sp_status sp_result_distance(const sp_result* r, double* distance) {
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    if (!distance) return fail(SP_ERR_INVALID_ARG, "distance required");
    *distance = r->run.plan.breakdown.distance;
    return SP_OK;
}

size_t sp_result_term_count(const sp_result* r) {
    return r ? r->run.plan.breakdown.terms.size() : 0;
}

sp_status sp_result_term(const sp_result* r, size_t index, const char** name,
                         double* value) {
    if (!r) return fail(SP_ERR_INVALID_ARG, "result handle is null");
    if (index >= r->run.plan.breakdown.terms.size()) {
        return fail(SP_ERR_INVALID_ARG, "term index out of range");
    }
    const auto& term = r->run.plan.breakdown.terms[index];
    if (name) *name = strikeplan::planner::term_kind_name(term.kind);
    if (value) *value = term.value;
    return SP_OK;
}

size_t sp_result_history_size(const sp_result* r) {
    return r ? r->run.plan.pso_history.size() : 0;
}

sp_status sp_result_history(const sp_result* r, double* buffer, size_t capacity) {
    if (!r || !buffer) {
        return fail(SP_ERR_INVALID_ARG, "result and buffer required");
    }
    const auto& h = r->run.plan.pso_history;
    const size_t n = capacity < h.size() ? capacity : h.size();
    std::memcpy(buffer, h.data(), n * sizeof(double));
    return SP_OK;
}

sp_status sp_export_trajectories(const sp_scenario* s, const sp_result* r,
                                 const char* dir) {
    if (!s || !dir) return fail(SP_ERR_INVALID_ARG, "scenario and dir required");
    if (const sp_status st = require_feasible(r); st != SP_OK) return st;
    try {
        strikeplan::trajectory::export_trajectories(
            dir, s->scenario.incoming, r->run.plan, s->scenario.physics);
        return SP_OK;
    } catch (...) {
        return fail_current();
    }
}

sp_status sp_replay_landing(const char* csv_path, double* t, double* x,
                            double* y) {
    if (!csv_path) return fail(SP_ERR_INVALID_ARG, "csv_path required");
    try {
        const auto rows = strikeplan::trajectory::read_csv(csv_path);
        const auto landing = strikeplan::trajectory::replay_landing(rows);
        if (!landing) {
            return fail(SP_ERR_NO_CROSSING,
                        "trajectory never descends through z = 0");
        }
        if (t) *t = landing->t;
        if (x) *x = landing->state.pos.x;
        if (y) *y = landing->state.pos.y;
        return SP_OK;
    } catch (...) {
        return fail_current();
    }
}

}  // extern "C"
