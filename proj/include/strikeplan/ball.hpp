#pragma once

#include "strikeplan/vec3.hpp"

namespace strikeplan {

// Coordinate convention: origin at the table center, z up (z = 0 is the
// table plane), robot side y < 0, opponent side y > 0. Spin follows the
// right-hand rule.

/// Ball state at a point in time: position (m), velocity (m/s) and
/// spin (rad/s). Spin is held constant between impacts.
struct BallState {
    double t = 0.0;  ///< seconds
    Vec3 pos;
    Vec3 vel;
    Vec3 spin;

    bool is_finite() const {
        return std::isfinite(t) && pos.is_finite() && vel.is_finite() &&
               spin.is_finite();
    }
};

enum class DragMode {
    linear,     ///< drag rate K_v, closed-form propagation
    quadratic,  ///< drag coefficient k_d, step-controlled integration
};

/// Model constants shared by the flight and impact models.
struct PhysicsParams {
    double K_v = 0.7;          ///< 1/s, linear drag rate
    double k_d = 0.1;          ///< 1/m, quadratic drag coefficient
    double k_m = 0.01;         ///< Magnus coupling
    double g = 9.81;           ///< m/s^2, gravity magnitude
    double e = 0.8;            ///< racket restitution
    double mu_k = 0.2;         ///< kinetic friction
    double r = 0.02;           ///< m, ball radius
    double net_height = 0.15;  ///< m
    DragMode drag_mode = DragMode::linear;

    /// Clamp the tangential impulse so the contact slip cannot reverse
    /// direction. Off by default: the stock model applies the full
    /// kinetic-friction impulse regardless.
    bool cap_slip_reversal = false;
};

}  // namespace strikeplan
