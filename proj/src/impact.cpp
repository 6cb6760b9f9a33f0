#include "strikeplan/impact.hpp"

#include <cmath>
#include <stdexcept>

namespace strikeplan::impact {

bool can_strike(const BallState& ball, const RacketVelocity& racket) {
    return ball.vel.y - racket.v_yr < 0.0;
}

NormalExchange normal_exchange(double v_iyb, double v_yr, double e) {
    const double v_iy = v_iyb - v_yr;
    if (!(v_iy < 0.0)) {
        throw std::domain_error(
            "normal_exchange: ball is receding from the racket (no impact)");
    }
    // Restitution reverses the relative normal velocity.
    const double v_fy = -e * v_iy;
    return {v_fy + v_yr, v_fy - v_iy};
}

TangentialExchange tangential_exchange(const BallState& ball,
                                       const RacketVelocity& racket,
                                       double delta_v_yb,
                                       const PhysicsParams& params) {
    const double s_x = (ball.vel.x - racket.v_xr) + params.r * ball.spin.z;
    const double s_z = (ball.vel.z - racket.v_zr) - params.r * ball.spin.x;
    const double slip = std::sqrt(s_x * s_x + s_z * s_z);
    if (slip <= kSlipEpsilon) return {0.0, 0.0, false};

    double impulse = params.mu_k * delta_v_yb;
    if (params.cap_slip_reversal) {
        // A tangential impulse dv changes the contact slip by (5/3) dv
        // through the coupled spin change; cap it where slip reaches zero.
        impulse = std::min(impulse, slip / (1.0 + kSpinCoupling));
    }
    return {-impulse * s_x / slip, -impulse * s_z / slip, true};
}

Vec3 spin_update(double delta_v_xb, double delta_v_zb, double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("spin_update: ball radius must be > 0");
    }
    const double c = kSpinCoupling / r;
    return {-c * delta_v_zb, 0.0, c * delta_v_xb};
}

ImpactOutcome racket_rebound(const BallState& ball,
                             const RacketVelocity& racket,
                             const PhysicsParams& params) {
    const NormalExchange normal =
        normal_exchange(ball.vel.y, racket.v_yr, params.e);
    const TangentialExchange tangential =
        tangential_exchange(ball, racket, normal.delta_v_yb, params);
    const Vec3 delta_v{tangential.delta_v_xb, normal.delta_v_yb,
                       tangential.delta_v_zb};
    const Vec3 delta_w =
        spin_update(tangential.delta_v_xb, tangential.delta_v_zb, params.r);

    ImpactOutcome out;
    out.post = ball;
    out.post.vel = ball.vel + delta_v;
    out.post.spin = ball.spin + delta_w;
    out.delta_v = delta_v;
    out.delta_w = delta_w;
    out.slipped = tangential.slipped;
    return out;
}

}  // namespace strikeplan::impact
