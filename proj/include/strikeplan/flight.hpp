#pragma once

#include <array>
#include <optional>

#include "strikeplan/ball.hpp"

namespace strikeplan::flight {

/// Default horizon for trajectory queries, generous for any rally segment.
inline constexpr double kDefaultHorizon = 3.0;  // s

/// Fixed scan step used to bracket plane crossings and apexes before
/// bisection refinement.
inline constexpr double kScanStep = 1e-3;  // s

/// Vertical tolerance for refined plane crossings.
inline constexpr double kCrossingTol = 1e-6;  // m

/// The 6-state LTI flight system d/dt [v; x] = A [v; x] + B.
/// The velocity block of A carries -K_v on the diagonal and the Magnus
/// skew terms off it; the position block is the identity feed-through.
struct SystemMatrix {
    std::array<std::array<double, 6>, 6> A{};
    std::array<double, 6> B{};
};

/// Assemble A and B for a constant spin. Linear drag mode only.
/// Throws std::invalid_argument on non-finite spin.
SystemMatrix build_system(const Vec3& spin, const PhysicsParams& params);

/// dv/dt at the given state: drag (per params.drag_mode) + Magnus + gravity.
Vec3 acceleration(const BallState& state, const PhysicsParams& params);

/// Advance the state by dt seconds holding spin constant.
///
/// Linear mode uses the exact closed-form solution of the LTI system;
/// quadratic mode integrates with classical 4th-order steps of at most
/// 1 ms. Throws std::invalid_argument for dt < 0 and std::runtime_error
/// if the state diverges to non-finite values.
BallState propagate(const BallState& initial, double dt,
                    const PhysicsParams& params);

struct PlaneCrossing {
    double t;  ///< seconds after initial.t
    BallState state;
};

/// Earliest time in (0, t_max] at which pos.z crosses plane_z from above
/// with vel.z < 0, refined to |pos.z - plane_z| < 1e-6 m. Returns nullopt
/// when no such crossing exists within the horizon.
std::optional<PlaneCrossing> find_descending_crossing(
    const BallState& initial, double plane_z, double t_max,
    const PhysicsParams& params);

/// True when the trajectory reaches the net plane y = 0 at or below
/// params.net_height, or lands (descending z = 0) or runs out of horizon
/// before ever reaching y = 0. Intended for post-impact states on the
/// robot side (pos.y < 0).
bool crosses_net_too_low(const BallState& initial, double t_max,
                         const PhysicsParams& params);

/// Maximum pos.z over [0, t_horizon], where t_horizon is the earlier of
/// t_max and the descending z = 0 crossing. Apexes are located by the
/// sign change of vel.z and refined by bisection.
double max_height(const BallState& initial, double t_max,
                  const PhysicsParams& params);

}  // namespace strikeplan::flight
