#include "strikeplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace strikeplan::planner {
namespace {

constexpr double kDenomFloor = 1e-9;
constexpr double kMinStrikeTime = 1e-4;

double guarded_reciprocal(double weight, double denom) {
    return weight / std::max(denom, kDenomFloor);
}

}  // namespace

const char* term_kind_name(TermKind kind) {
    switch (kind) {
        case TermKind::landing_speed_bonus: return "landing_speed_bonus";
        case TermKind::spin_xy_bonus: return "spin_xy_bonus";
        case TermKind::flatness: return "flatness";
        case TermKind::max_height_bonus: return "max_height_bonus";
        case TermKind::max_height_penalty: return "max_height_penalty";
        case TermKind::spin_x_bonus: return "spin_x_bonus";
    }
    return "unknown";
}

std::optional<TermKind> parse_term_kind(std::string_view name) {
    for (TermKind kind : {TermKind::landing_speed_bonus, TermKind::spin_xy_bonus,
                          TermKind::flatness, TermKind::max_height_bonus,
                          TermKind::max_height_penalty, TermKind::spin_x_bonus}) {
        if (name == term_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

double secondary_term(const SecondaryTerm& term, const BallState& landing_state,
                      const BallState& post_impact, const PhysicsParams& params,
                      double t_max) {
    switch (term.kind) {
        case TermKind::landing_speed_bonus:
            return guarded_reciprocal(term.weight, landing_state.vel.norm());
        case TermKind::spin_xy_bonus: {
            const Vec3& w = post_impact.spin;
            return guarded_reciprocal(term.weight, std::hypot(w.x, w.y));
        }
        case TermKind::flatness:
            return term.weight * std::abs(landing_state.vel.z) +
                   guarded_reciprocal(term.weight2, std::abs(landing_state.vel.y));
        case TermKind::max_height_bonus:
            return guarded_reciprocal(
                term.weight, flight::max_height(post_impact, t_max, params));
        case TermKind::max_height_penalty:
            return term.weight * flight::max_height(post_impact, t_max, params);
        case TermKind::spin_x_bonus:
            return guarded_reciprocal(term.weight, std::abs(post_impact.spin.x));
    }
    throw std::invalid_argument("secondary_term: unknown term kind");
}

double evaluate_candidate(const StrikeCandidate& candidate,
                          const BallState& incoming, const CostSpec& spec,
                          const Workspace& ws, const TableGeometry&,
                          const PhysicsParams& params, EvalDetail* detail) {
    if (!(candidate.T > 0.0) || !std::isfinite(candidate.T)) {
        return pso::kInfeasible;
    }

    const BallState at_strike = flight::propagate(incoming, candidate.T, params);
    if (!ws.contains(at_strike.pos)) return pso::kInfeasible;

    const impact::RacketVelocity& r = candidate.racket;
    if (std::abs(r.v_xr) > ws.v_limit.x || std::abs(r.v_yr) > ws.v_limit.y ||
        std::abs(r.v_zr) > ws.v_limit.z) {
        return pso::kInfeasible;
    }

    if (!impact::can_strike(at_strike, r)) return pso::kInfeasible;
    const impact::ImpactOutcome outcome = impact::racket_rebound(at_strike, r, params);

    const double horizon = flight::kDefaultHorizon;
    if (flight::crosses_net_too_low(outcome.post, horizon, params)) {
        return pso::kInfeasible;
    }

    const auto landing =
        flight::find_descending_crossing(outcome.post, 0.0, horizon, params);
    if (!landing) return pso::kInfeasible;

    CostBreakdown breakdown;
    breakdown.distance = std::hypot(landing->state.pos.x - spec.x_t,
                                    landing->state.pos.y - spec.y_t);
    breakdown.total = breakdown.distance;
    breakdown.terms.reserve(spec.terms.size());
    for (const SecondaryTerm& term : spec.terms) {
        const double value =
            secondary_term(term, landing->state, outcome.post, params, horizon);
        breakdown.terms.push_back({term.kind, value});
        breakdown.total += value;
    }

    if (detail) {
        detail->strike_ball = at_strike;
        detail->post_impact = outcome.post;
        detail->landing_state = landing->state;
        detail->landing_t = landing->t;
        detail->breakdown = breakdown;
    }
    return breakdown.total;
}

std::vector<pso::Bounds> default_bounds(const BallState& incoming,
                                        const Workspace& ws,
                                        const PhysicsParams& params) {
    double first = -1.0;
    double last = -1.0;
    BallState cur = incoming;
    const int steps =
        static_cast<int>(std::ceil(flight::kDefaultHorizon / flight::kScanStep));
    for (int k = 0; k <= steps; ++k) {
        const double t = k * flight::kScanStep;
        if (ws.contains(cur.pos)) {
            if (first < 0.0) first = t;
            last = t;
        }
        if (k < steps) cur = flight::propagate(cur, flight::kScanStep, params);
    }
    if (first < 0.0) {
        throw NoStrikeWindow(
            "default_bounds: incoming trajectory never enters the workspace");
    }

    const double margin = 0.1 * (last - first);
    double lo = std::max(first - margin, kMinStrikeTime);
    double hi = last + margin;
    if (hi <= lo) hi = lo + flight::kScanStep;

    return {
        {lo, hi},
        {-ws.v_limit.x, ws.v_limit.x},
        {-ws.v_limit.y, ws.v_limit.y},
        {-ws.v_limit.z, ws.v_limit.z},
    };
}

PlanResult plan_strike(const BallState& incoming, const CostSpec& spec,
                       const Workspace& ws, const TableGeometry& table,
                       const PhysicsParams& params,
                       const pso::PsoConfig& pso_config) {
    PlanResult result;

    pso::PsoConfig cfg = pso_config;
    if (cfg.bounds.empty()) {
        try {
            cfg.bounds = default_bounds(incoming, ws, params);
        } catch (const NoStrikeWindow&) {
            return result;
        }
    } else if (cfg.bounds.size() != 4) {
        throw std::invalid_argument(
            "plan_strike: bounds must cover (T, v_xr, v_yr, v_zr)");
    }

    const auto cost_fn = [&](std::span<const double> p) {
        const StrikeCandidate c{p[0], {p[1], p[2], p[3]}};
        return evaluate_candidate(c, incoming, spec, ws, table, params);
    };
    const pso::OptimizeResult opt = pso::optimize(cost_fn, cfg);
    result.pso_history = opt.history;
    if (!opt.feasible()) return result;

    result.strike = {opt.best_pos[0],
                     {opt.best_pos[1], opt.best_pos[2], opt.best_pos[3]}};

    EvalDetail detail;
    result.cost = evaluate_candidate(result.strike, incoming, spec, ws, table,
                                     params, &detail);
    if (result.cost >= pso::kInfeasible) {
        // Cannot happen for a deterministic cost function; fail closed.
        result.cost = pso::kInfeasible;
        return result;
    }

    result.feasible = true;
    result.landing_state = detail.landing_state;
    result.landing_x = detail.landing_state.pos.x;
    result.landing_y = detail.landing_state.pos.y;
    result.post_impact = detail.post_impact;
    result.breakdown = detail.breakdown;
    result.max_height =
        flight::max_height(detail.post_impact, flight::kDefaultHorizon, params);
    return result;
}

}  // namespace strikeplan::planner
