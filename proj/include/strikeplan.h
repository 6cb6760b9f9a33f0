/*
 * strikeplan: plan table-tennis strikes for a Cartesian robot.
 *
 * Load a scenario (incoming ball, target, physics), run the planner, then
 * read the strike plan back through the result handle. Handles are opaque;
 * every function that can fail returns an sp_status, and sp_last_error()
 * describes the most recent failure on the calling thread.
 */
#ifndef STRIKEPLAN_H
#define STRIKEPLAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SP_API __declspec(dllexport)
#else
#define SP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
    SP_OK = 0,
    SP_ERR_INVALID_ARG = 1, /* null handle or out-of-domain argument */
    SP_ERR_PARSE = 2,       /* malformed JSON or CSV, unreadable input */
    SP_ERR_VALIDATION = 3,  /* well-formed input violating an invariant */
    SP_ERR_IO = 4,          /* failed to create or write an output file */
    SP_ERR_INFEASIBLE = 5,  /* no feasible plan behind this result */
    SP_ERR_NO_CROSSING = 6, /* replayed trajectory never lands */
    SP_ERR_INTERNAL = 7
} sp_status;

typedef struct sp_scenario sp_scenario;
typedef struct sp_result sp_result;

SP_API const char* sp_version(void);
SP_API const char* sp_status_name(sp_status status);

/* Message for the most recent failure on this thread; never NULL. */
SP_API const char* sp_last_error(void);

/* ---- scenarios ---- */

SP_API sp_status sp_scenario_load(const char* path, sp_scenario** out);
SP_API sp_status sp_scenario_parse(const char* json_text, sp_scenario** out);
SP_API void sp_scenario_free(sp_scenario* s);

/* Returned strings stay valid until sp_scenario_free. */
SP_API const char* sp_scenario_name(const sp_scenario* s);
SP_API const char* sp_scenario_json(sp_scenario* s);
SP_API sp_status sp_scenario_seed(const sp_scenario* s, uint64_t* seed);
SP_API sp_status sp_scenario_tolerance(const sp_scenario* s, double* tolerance);
SP_API sp_status sp_scenario_target(const sp_scenario* s, double* x, double* y);

/* ---- planning ---- */

typedef struct sp_plan_options {
    uint64_t seed;         /* used when use_scenario_seed == 0 */
    int use_scenario_seed; /* nonzero: take the seed from the scenario */
    int parallel;          /* nonzero: evaluate the swarm on worker threads */
} sp_plan_options;

/* Defaults: scenario seed, serial evaluation. */
SP_API void sp_plan_options_init(sp_plan_options* options);

/*
 * Runs the planner. Succeeds even when no feasible strike exists; check
 * sp_result_feasible. options may be NULL for defaults.
 */
SP_API sp_status sp_plan(const sp_scenario* s, const sp_plan_options* options,
                         sp_result** out);

/* ---- results ---- */

SP_API void sp_result_free(sp_result* r);
SP_API int sp_result_feasible(const sp_result* r);
SP_API double sp_result_cost(const sp_result* r);
SP_API double sp_result_plan_seconds(const sp_result* r);
SP_API uint64_t sp_result_seed(const sp_result* r);

/* The getters below fail with SP_ERR_INFEASIBLE on an infeasible result. */
SP_API sp_status sp_result_strike(const sp_result* r, double* strike_time,
                                  double racket_velocity[3]);
SP_API sp_status sp_result_landing(const sp_result* r, double* x, double* y,
                                   double* t);
SP_API sp_status sp_result_landing_velocity(const sp_result* r, double vel[3]);
SP_API sp_status sp_result_post_impact_spin(const sp_result* r, double spin[3]);
SP_API sp_status sp_result_max_height(const sp_result* r, double* height);
SP_API sp_status sp_result_distance(const sp_result* r, double* distance);

/* Secondary cost terms of the winning candidate. */
SP_API size_t sp_result_term_count(const sp_result* r);
SP_API sp_status sp_result_term(const sp_result* r, size_t index,
                                const char** name, double* value);

/* Best cost after each optimizer iteration. */
SP_API size_t sp_result_history_size(const sp_result* r);
SP_API sp_status sp_result_history(const sp_result* r, double* buffer,
                                   size_t capacity);

/*
 * Writes pre_impact.csv and post_impact.csv for a feasible result into
 * directory `dir` (created if missing).
 */
SP_API sp_status sp_export_trajectories(const sp_scenario* s, const sp_result* r,
                                        const char* dir);

/*
 * Finds the table contact in a trajectory CSV by interpolating the first
 * descending z = 0 crossing. Output pointers may be NULL.
 */
SP_API sp_status sp_replay_landing(const char* csv_path, double* t, double* x,
                                   double* y);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STRIKEPLAN_H */
