#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "strikeplan/ball.hpp"
#include "strikeplan/flight.hpp"
#include "strikeplan/impact.hpp"
#include "strikeplan/pso.hpp"

namespace strikeplan::planner {

struct TableGeometry {
    double length = 2.74;      ///< m, y extent; robot side is y < 0
    double width = 1.525;      ///< m, x extent, centered
    double net_height = 0.15;  ///< m
};

struct AxisRange {
    double lo;
    double hi;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Reachable box for the racket center plus per-axis speed limits.
struct Workspace {
    AxisRange x{-1.0125, 1.0125};
    AxisRange y{-1.62, 0.0};
    AxisRange z{0.0, 0.76};
    Vec3 v_limit{5.0, 5.0, 5.0};

    bool contains(const Vec3& p) const {
        return x.contains(p.x) && y.contains(p.y) && z.contains(p.z);
    }
};

enum class TermKind {
    landing_speed_bonus,  ///< weight / |v| at table contact
    spin_xy_bonus,        ///< weight / sqrt(w_x^2 + w_y^2) after impact
    flatness,             ///< weight * |v_z| + weight2 / |v_y| at contact
    max_height_bonus,     ///< weight / max flight height
    max_height_penalty,   ///< weight * max flight height
    spin_x_bonus,         ///< weight / |w_x| after impact
};

const char* term_kind_name(TermKind kind);
std::optional<TermKind> parse_term_kind(std::string_view name);

struct SecondaryTerm {
    TermKind kind;
    double weight = 0.0;
    double weight2 = 0.0;  ///< used by flatness only
};

/// Target landing point plus weighted secondary objectives.
struct CostSpec {
    double x_t = 0.0;
    double y_t = 0.0;
    std::vector<SecondaryTerm> terms;
};

/// The planner's decision vector: strike time (seconds after the bounce
/// at t = 0) and the racket velocity at contact.
struct StrikeCandidate {
    double T = 0.0;
    impact::RacketVelocity racket;
};

struct TermValue {
    TermKind kind;
    double value;
};

struct CostBreakdown {
    double distance = 0.0;  ///< ||landing - target||
    std::vector<TermValue> terms;
    double total = 0.0;
};

struct EvalDetail {
    BallState strike_ball;    ///< incoming ball at the strike time
    BallState post_impact;    ///< ball immediately after the rebound
    BallState landing_state;  ///< ball at table contact (z = 0)
    double landing_t = 0.0;   ///< seconds after the strike
    CostBreakdown breakdown;
};

/// One secondary objective value; guards reciprocal terms with a 1e-9
/// denominator floor.
double secondary_term(const SecondaryTerm& term, const BallState& landing_state,
                      const BallState& post_impact, const PhysicsParams& params,
                      double t_max = flight::kDefaultHorizon);

/// Cost of one strike candidate. Returns pso::kInfeasible when the strike
/// point is outside the workspace, the racket velocity exceeds its limits,
/// the ball is not approaching the racket, the return would hit the net,
/// or the return never lands. Fills detail on feasible candidates.
double evaluate_candidate(const StrikeCandidate& candidate,
                          const BallState& incoming, const CostSpec& spec,
                          const Workspace& ws, const TableGeometry& table,
                          const PhysicsParams& params,
                          EvalDetail* detail = nullptr);

struct NoStrikeWindow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// PSO search bounds for (T, v_xr, v_yr, v_zr): the strike-time window is
/// the span of the pre-impact trajectory inside the workspace (1 ms scan)
/// widened by 10% on both ends; velocity bounds are +-v_limit per axis.
/// Throws NoStrikeWindow when the trajectory never enters the workspace.
std::vector<pso::Bounds> default_bounds(const BallState& incoming,
                                        const Workspace& ws,
                                        const PhysicsParams& params);

struct PlanResult {
    StrikeCandidate strike;
    double landing_x = 0.0;
    double landing_y = 0.0;
    BallState landing_state;
    BallState post_impact;
    double cost = pso::kInfeasible;
    CostBreakdown breakdown;
    std::vector<double> pso_history;
    bool feasible = false;
    double max_height = 0.0;  ///< of the post-impact flight
};

/// Optimize the strike with PSO, then re-simulate the winning candidate
/// end to end so the reported landing is never a stale cached value.
/// pso_config.bounds may be empty, in which case default_bounds is used.
/// All-infeasible outcomes (including a missing strike window) come back
/// with feasible = false, never as an exception.
PlanResult plan_strike(const BallState& incoming, const CostSpec& spec,
                       const Workspace& ws, const TableGeometry& table,
                       const PhysicsParams& params,
                       const pso::PsoConfig& pso_config);

}  // namespace strikeplan::planner
