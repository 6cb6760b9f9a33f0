#include "strikeplan/pso.hpp"

#include <future>
#include <stdexcept>

namespace strikeplan::pso {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void evaluate_all(const SwarmState& state, const CostFn& cost,
                  const PsoConfig& config, std::vector<double>& out) {
    const std::size_t n = state.particles.size();
    out.resize(n);
    if (config.eval_mode == EvalMode::parallel && n > 1) {
        std::vector<std::future<double>> futures;
        futures.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            futures.push_back(std::async(std::launch::async, [&, i] {
                return cost(state.particles[i].pos);
            }));
        }
        for (std::size_t i = 0; i < n; ++i) out[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = cost(state.particles[i].pos);
    }
}

// Merge costs into personal and swarm bests, in particle index order,
// strict improvement only (incumbents win ties).
void merge_bests(SwarmState& state, const std::vector<double>& costs) {
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        Particle& p = state.particles[i];
        if (costs[i] < p.best_cost) {
            p.best_cost = costs[i];
            p.best_pos = p.pos;
        }
        if (p.best_cost < state.g_best_cost) {
            state.g_best_cost = p.best_cost;
            state.g_best_pos = p.best_pos;
        }
    }
}

}  // namespace

void validate(const PsoConfig& config) {
    if (config.swarm_size < 1) {
        throw std::invalid_argument("pso: swarm_size must be >= 1");
    }
    if (config.iterations < 1) {
        throw std::invalid_argument("pso: iterations must be >= 1");
    }
    if (config.c1 < 0.0 || config.c2 < 0.0) {
        throw std::invalid_argument("pso: learning rates must be >= 0");
    }
    if (config.bounds.empty()) {
        throw std::invalid_argument("pso: bounds must cover at least one dimension");
    }
    for (const Bounds& b : config.bounds) {
        if (!(b.lo < b.hi)) {
            throw std::invalid_argument("pso: each bound must satisfy lo < hi");
        }
    }
}

SwarmState init_swarm(const CostFn& cost, const PsoConfig& config) {
    validate(config);
    const std::size_t dims = config.bounds.size();

    SwarmState state;
    state.rng.seed(config.seed);
    state.particles.resize(config.swarm_size);
    for (Particle& p : state.particles) {
        p.pos.resize(dims);
        p.vel.assign(dims, 0.0);
        for (std::size_t d = 0; d < dims; ++d) {
            const Bounds& b = config.bounds[d];
            p.pos[d] = b.lo + uniform01(state.rng) * (b.hi - b.lo);
        }
        p.best_pos = p.pos;
    }

    std::vector<double> costs;
    evaluate_all(state, cost, config, costs);
    state.g_best_pos = state.particles.front().pos;
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        state.particles[i].best_cost = costs[i];
        if (costs[i] < state.g_best_cost) {
            state.g_best_cost = costs[i];
            state.g_best_pos = state.particles[i].pos;
        }
    }
    return state;
}

void step(SwarmState& state, const CostFn& cost, const PsoConfig& config) {
    const std::size_t dims = config.bounds.size();

    // Move first: velocity updates use the bests from the previous
    // iteration for every particle, which keeps the random stream and the
    // results independent of how costs are evaluated afterwards.
    for (Particle& p : state.particles) {
        double r1 = 0.0;
        double r2 = 0.0;
        if (!config.per_dimension_r) {
            r1 = uniform01(state.rng);
            r2 = uniform01(state.rng);
        }
        std::vector<double> r1d;
        std::vector<double> r2d;
        if (config.per_dimension_r) {
            r1d.resize(dims);
            r2d.resize(dims);
            for (std::size_t d = 0; d < dims; ++d) r1d[d] = uniform01(state.rng);
            for (std::size_t d = 0; d < dims; ++d) r2d[d] = uniform01(state.rng);
        }
        for (std::size_t d = 0; d < dims; ++d) {
            const double a1 = config.per_dimension_r ? r1d[d] : r1;
            const double a2 = config.per_dimension_r ? r2d[d] : r2;
            p.vel[d] = config.w * p.vel[d] +
                       config.c1 * a1 * (p.best_pos[d] - p.pos[d]) +
                       config.c2 * a2 * (state.g_best_pos[d] - p.pos[d]);
            p.pos[d] += p.vel[d];
        }
    }

    std::vector<double> costs;
    evaluate_all(state, cost, config, costs);
    merge_bests(state, costs);
    ++state.iteration;
}

OptimizeResult optimize(const CostFn& cost, const PsoConfig& config) {
    SwarmState state = init_swarm(cost, config);

    OptimizeResult result;
    result.history.reserve(config.iterations);
    for (int i = 0; i < config.iterations; ++i) {
        step(state, cost, config);
        result.history.push_back(state.g_best_cost);
    }
    result.best_pos = state.g_best_pos;
    result.best_cost = state.g_best_cost;
    result.evaluations =
        static_cast<long>(config.swarm_size) * (config.iterations + 1);
    return result;
}

}  // namespace strikeplan::pso
