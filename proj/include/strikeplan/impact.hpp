#pragma once

#include "strikeplan/ball.hpp"

namespace strikeplan::impact {

// Racket rebound model. The racket face is always normal to the y-axis,
// so restitution acts on the y velocity and friction on the x/z pair.
// The racket is treated as infinitely massive and its velocity as
// constant over the contact; ball mass cancels out of the impulse
// equations and is not a parameter.

/// Below this contact-slip speed the friction direction is undefined and
/// the tangential impulse is zero.
inline constexpr double kSlipEpsilon = 1e-9;  // m/s

/// Spin/velocity coupling coefficient: delta_w = (2 / (3 r)) * delta_v
/// with the axis pairing of the rebound model.
inline constexpr double kSpinCoupling = 2.0 / 3.0;  // times 1/r

/// Racket velocity components at contact (m/s).
struct RacketVelocity {
    double v_xr = 0.0;
    double v_yr = 0.0;
    double v_zr = 0.0;
};

/// True when the ball actually approaches the racket face, i.e. the
/// relative normal velocity v_iyb - v_yr is negative.
bool can_strike(const BallState& ball, const RacketVelocity& racket);

struct NormalExchange {
    double v_fyb;        ///< ball y velocity after impact
    double delta_v_yb;   ///< change in ball y velocity, always > 0
};

/// Restitution along the racket normal: the relative normal velocity is
/// reversed and scaled by e. Throws std::domain_error when the ball is
/// receding from the racket (no impact).
NormalExchange normal_exchange(double v_iyb, double v_yr, double e);

struct TangentialExchange {
    double delta_v_xb;
    double delta_v_zb;
    bool slipped;
};

/// Friction impulse in the racket plane. The contact slip is
///   s_x = (v_ix - v_xr) + r w_z,   s_z = (v_iz - v_zr) - r w_x,
/// and the impulse magnitude is mu_k * delta_v_yb directed against the
/// slip. Zero slip gives a zero impulse.
TangentialExchange tangential_exchange(const BallState& ball,
                                       const RacketVelocity& racket,
                                       double delta_v_yb,
                                       const PhysicsParams& params);

/// Spin change coupled to the tangential velocity change:
/// (-(2/(3r)) dv_z, 0, (2/(3r)) dv_x).
Vec3 spin_update(double delta_v_xb, double delta_v_zb, double r);

struct ImpactOutcome {
    BallState post;  ///< same t and pos as the input, new vel and spin
    Vec3 delta_v;
    Vec3 delta_w;
    bool slipped;
};

/// Full rebound: normal exchange, friction, spin coupling. Position and
/// time are unchanged (instantaneous impact). Throws std::domain_error
/// when can_strike is false.
ImpactOutcome racket_rebound(const BallState& ball,
                             const RacketVelocity& racket,
                             const PhysicsParams& params);

}  // namespace strikeplan::impact
