#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace strikeplan::pso {

/// Cost value for infeasible points. It is only ever compared, never
/// used in arithmetic; any finite cost beats it.
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

struct Bounds {
    double lo;
    double hi;
};

enum class EvalMode {
    serial,
    /// Evaluate particle costs concurrently within an iteration. Random
    /// draws and best updates stay on the calling thread in particle
    /// index order, so results are bit-identical to serial mode.
    parallel,
};

struct PsoConfig {
    int swarm_size = 10;
    int iterations = 20;
    double c1 = 1.5;  ///< cognitive learning rate
    double c2 = 1.5;  ///< social learning rate
    double w = 0.6;   ///< inertia weight
    std::vector<Bounds> bounds;
    std::uint64_t seed = 1;
    /// Draw r1/r2 per dimension instead of one scalar pair per particle.
    bool per_dimension_r = false;
    EvalMode eval_mode = EvalMode::serial;
};

/// Cost function over the search space. May return kInfeasible; must be
/// deterministic for a fixed input.
using CostFn = std::function<double(std::span<const double>)>;

struct Particle {
    std::vector<double> pos;
    std::vector<double> vel;
    std::vector<double> best_pos;
    double best_cost = kInfeasible;
};

// Reproducibility contract: all randomness comes from one mt19937_64
// stream seeded with config.seed, consumed particle-major. init_swarm
// draws positions dimension by dimension; each step draws r1 then r2
// per particle (the full r1 vector then the full r2 vector in
// per-dimension mode). Uniform doubles are (rng() >> 11) / 2^53.
struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> g_best_pos;
    double g_best_cost = kInfeasible;
    int iteration = 0;
    std::mt19937_64 rng;
};

struct OptimizeResult {
    std::vector<double> best_pos;
    double best_cost = kInfeasible;
    std::vector<double> history;  ///< g_best_cost after each iteration
    long evaluations = 0;
    bool feasible() const { return best_cost < kInfeasible; }
};

/// Validate config invariants; throws std::invalid_argument.
void validate(const PsoConfig& config);

/// Positions uniform within bounds, velocities zero, bests initialized
/// from the starting evaluations.
SwarmState init_swarm(const CostFn& cost, const PsoConfig& config);

/// One synchronous iteration: move every particle under inertia plus
/// attraction to its own and the swarm best, then evaluate and update
/// bests by strict improvement.
void step(SwarmState& state, const CostFn& cost, const PsoConfig& config);

/// init_swarm followed by exactly config.iterations steps. A result with
/// best_cost == kInfeasible means no particle ever found a feasible point.
OptimizeResult optimize(const CostFn& cost, const PsoConfig& config);

}  // namespace strikeplan::pso
