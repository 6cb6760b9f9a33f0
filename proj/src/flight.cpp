#include "strikeplan/flight.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace strikeplan::flight {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

Vector3d to_eigen(const Vec3& v) { return {v.x, v.y, v.z}; }
Vec3 from_eigen(const Vector3d& v) { return {v.x(), v.y(), v.z()}; }

// Velocity block of the system matrix: -K_v on the diagonal, Magnus skew
// terms off it. Equals -K_v I + k_m [spin]_x.
Matrix3d velocity_block(const Vec3& w, const PhysicsParams& p) {
    const double km = p.k_m;
    Matrix3d m;
    m << -p.K_v, -km * w.z, km * w.y,     //
        km * w.z, -p.K_v, -km * w.x,      //
        -km * w.y, km * w.x, -p.K_v;
    return m;
}

// exp(M t) for M = -K_v I + k_m [spin]_x: the two parts commute, so the
// exponential is a scalar decay times a rotation about the spin axis.
Matrix3d exp_velocity_block(const Vec3& spin, const PhysicsParams& p,
                            double t) {
    const double wn = spin.norm();
    Matrix3d rot = Matrix3d::Identity();
    if (wn > 1e-300) {
        rot = Eigen::AngleAxisd(p.k_m * wn * t, to_eigen(spin) / wn)
                  .toRotationMatrix();
    }
    return std::exp(-p.K_v * t) * rot;
}

Vec3 accel_quadratic(const Vec3& vel, const Vec3& spin,
                     const PhysicsParams& p) {
    const double speed = vel.norm();
    Vec3 a = (-p.k_d * speed) * vel + p.k_m * spin.cross(vel);
    a.z -= p.g;
    return a;
}

BallState rk4_step(const BallState& s, double h, const PhysicsParams& p) {
    const Vec3 k1v = accel_quadratic(s.vel, s.spin, p);
    const Vec3 k1x = s.vel;
    const Vec3 k2v = accel_quadratic(s.vel + 0.5 * h * k1v, s.spin, p);
    const Vec3 k2x = s.vel + 0.5 * h * k1v;
    const Vec3 k3v = accel_quadratic(s.vel + 0.5 * h * k2v, s.spin, p);
    const Vec3 k3x = s.vel + 0.5 * h * k2v;
    const Vec3 k4v = accel_quadratic(s.vel + h * k3v, s.spin, p);
    const Vec3 k4x = s.vel + h * k3v;

    BallState out = s;
    out.t = s.t + h;
    out.vel = s.vel + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.pos = s.pos + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    return out;
}

// Advances states for one fixed spin value. In linear mode the segment
// solution is the exact closed form
//   v(t) = E v0 + G b,   x(t) = x0 + G v0 + M^{-1}(G - t I) b
// with E = exp(M t), G = M^{-1}(E - I), b = (0, 0, -g). The maps for the
// 1 ms scan step are cached since grid walks dominate the work.
class Propagator {
  public:
    Propagator(const Vec3& spin, const PhysicsParams& p)
        : p_(p), spin_(spin), linear_(p.drag_mode == DragMode::linear) {
        if (linear_) {
            if (!(p.K_v > 0.0)) {
                throw std::invalid_argument(
                    "flight: linear drag mode requires K_v > 0");
            }
            minv_ = velocity_block(spin, p).inverse();
            grid_ = solve(kScanStep);
        }
    }

    // Any dt >= 0. Quadratic mode splits dt into uniform steps <= 1 ms.
    BallState advance(const BallState& s, double dt) const {
        if (dt == 0.0) return s;
        if (linear_) return apply(solve(dt), s, dt);
        const int n = std::max(1, static_cast<int>(std::ceil(dt / kScanStep - 1e-12)));
        const double h = dt / n;
        BallState cur = s;
        for (int i = 0; i < n; ++i) cur = rk4_step(cur, h, p_);
        cur.t = s.t + dt;  // avoid accumulated time rounding
        return cur;
    }

    // Fast path for widths <= the scan step (one segment / one RK4 step).
    BallState step(const BallState& s, double width) const {
        if (linear_) {
            if (width == kScanStep) return apply(grid_, s, width);
            return apply(solve(width), s, width);
        }
        return rk4_step(s, width, p_);
    }

  private:
    struct Segment {
        Matrix3d E;
        Matrix3d G;
        Vector3d vel_off;
        Vector3d pos_off;
    };

    Segment solve(double dt) const {
        Segment seg;
        seg.E = exp_velocity_block(spin_, p_, dt);
        seg.G = minv_ * (seg.E - Matrix3d::Identity());
        const Vector3d b(0.0, 0.0, -p_.g);
        seg.vel_off = seg.G * b;
        seg.pos_off = minv_ * (seg.G - dt * Matrix3d::Identity()) * b;
        return seg;
    }

    static BallState apply(const Segment& seg, const BallState& s, double dt) {
        const Vector3d v0 = to_eigen(s.vel);
        BallState out = s;
        out.t = s.t + dt;
        out.vel = from_eigen(seg.E * v0 + seg.vel_off);
        out.pos = from_eigen(to_eigen(s.pos) + seg.G * v0 + seg.pos_off);
        return out;
    }

    PhysicsParams p_;
    Vec3 spin_;
    bool linear_;
    Matrix3d minv_;
    Segment grid_;
};

// Bisect within [0, width] after base for coord(state) == target, where
// coord - target goes from positive to non-positive across the bracket.
template <typename Coord>
BallState refine_crossing(const Propagator& prop, const BallState& base,
                          double width, double target, Coord coord) {
    double lo = 0.0;
    double hi = width;
    BallState at_hi = prop.step(base, hi);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const BallState s = prop.step(base, mid);
        const double f = coord(s) - target;
        if (std::abs(f) < kCrossingTol) return s;
        if (f > 0.0) {
            lo = mid;
        } else {
            hi = mid;
            at_hi = s;
        }
        if (hi - lo < 1e-13) break;
    }
    return at_hi;
}

void check_horizon(double t_max) {
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("flight: t_max must be > 0");
    }
}

}  // namespace

SystemMatrix build_system(const Vec3& spin, const PhysicsParams& params) {
    if (!spin.is_finite()) {
        throw std::invalid_argument("build_system: spin must be finite");
    }
    if (params.drag_mode != DragMode::linear) {
        throw std::invalid_argument(
            "build_system: only the linear drag mode is an LTI system");
    }
    const Matrix3d m = velocity_block(spin, params);
    SystemMatrix sys;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) sys.A[i][j] = m(i, j);
        sys.A[3 + i][i] = 1.0;  // position rows integrate velocity
    }
    sys.B[2] = -params.g;
    return sys;
}

Vec3 acceleration(const BallState& state, const PhysicsParams& params) {
    if (!state.is_finite()) {
        throw std::invalid_argument("acceleration: state must be finite");
    }
    if (params.drag_mode == DragMode::quadratic) {
        return accel_quadratic(state.vel, state.spin, params);
    }
    Vec3 a = from_eigen(velocity_block(state.spin, params) *
                        to_eigen(state.vel));
    a.z -= params.g;
    return a;
}

BallState propagate(const BallState& initial, double dt,
                    const PhysicsParams& params) {
    if (!initial.is_finite()) {
        throw std::invalid_argument("propagate: state must be finite");
    }
    if (!(dt >= 0.0)) {
        throw std::invalid_argument("propagate: dt must be >= 0");
    }
    if (dt == 0.0) return initial;
    const BallState out = Propagator(initial.spin, params).advance(initial, dt);
    if (!out.is_finite()) {
        throw std::runtime_error("propagate: flight diverged to non-finite state");
    }
    return out;
}

std::optional<PlaneCrossing> find_descending_crossing(
    const BallState& initial, double plane_z, double t_max,
    const PhysicsParams& params) {
    check_horizon(t_max);
    const Propagator prop(initial.spin, params);
    BallState cur = initial;
    double elapsed = 0.0;
    while (elapsed < t_max - 1e-15) {
        const double width = std::min(kScanStep, t_max - elapsed);
        const BallState next = prop.step(cur, width);
        if (cur.pos.z > plane_z && next.pos.z <= plane_z) {
            const BallState hit = refine_crossing(
                prop, cur, width, plane_z,
                [](const BallState& s) { return s.pos.z; });
            if (hit.vel.z < 0.0) {
                return PlaneCrossing{hit.t - initial.t, hit};
            }
            // Ascending graze; keep scanning.
        }
        cur = next;
        elapsed += width;
    }
    return std::nullopt;
}

bool crosses_net_too_low(const BallState& initial, double t_max,
                         const PhysicsParams& params) {
    check_horizon(t_max);
    if (initial.pos.y >= 0.0) {
        // Already at the net plane; treat the start as the crossing.
        return initial.pos.z <= params.net_height;
    }
    const Propagator prop(initial.spin, params);
    BallState cur = initial;
    double elapsed = 0.0;
    while (elapsed < t_max - 1e-15) {
        const double width = std::min(kScanStep, t_max - elapsed);
        const BallState next = prop.step(cur, width);
        const bool reaches_net = cur.pos.y < 0.0 && next.pos.y >= 0.0;
        const bool lands = cur.pos.z > 0.0 && next.pos.z <= 0.0;
        if (reaches_net || lands) {
            BallState net_hit;
            double t_net = std::numeric_limits<double>::infinity();
            if (reaches_net) {
                net_hit = refine_crossing(
                    prop, cur, width, 0.0,
                    [](const BallState& s) { return -s.pos.y; });
                t_net = net_hit.t;
            }
            double t_land = std::numeric_limits<double>::infinity();
            if (lands) {
                const BallState land = refine_crossing(
                    prop, cur, width, 0.0,
                    [](const BallState& s) { return s.pos.z; });
                if (land.vel.z < 0.0) t_land = land.t;
            }
            if (t_net <= t_land) return net_hit.pos.z <= params.net_height;
            if (std::isfinite(t_land)) return true;  // landed short of the net
        }
        cur = next;
        elapsed += width;
    }
    return true;  // never reached the net plane within the horizon
}

double max_height(const BallState& initial, double t_max,
                  const PhysicsParams& params) {
    check_horizon(t_max);
    double horizon = t_max;
    if (const auto landing =
            find_descending_crossing(initial, 0.0, t_max, params)) {
        horizon = landing->t;
    }
    const Propagator prop(initial.spin, params);
    double best = initial.pos.z;
    BallState cur = initial;
    double elapsed = 0.0;
    while (elapsed < horizon - 1e-15) {
        const double width = std::min(kScanStep, horizon - elapsed);
        const BallState next = prop.step(cur, width);
        best = std::max(best, next.pos.z);
        if (cur.vel.z > 0.0 && next.vel.z <= 0.0) {
            // Apex inside this step: bisect on vel.z.
            double lo = 0.0;
            double hi = width;
            for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
                const double mid = 0.5 * (lo + hi);
                (prop.step(cur, mid).vel.z > 0.0 ? lo : hi) = mid;
            }
            best = std::max(best, prop.step(cur, 0.5 * (lo + hi)).pos.z);
        }
        cur = next;
        elapsed += width;
    }
    return best;
}

}  // namespace strikeplan::flight
