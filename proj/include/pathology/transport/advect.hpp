#pragma once

#include "../errors.hpp"
#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace pathology {

// Periodic tensor-product cubic Lagrange interpolation (4 x 4 stencil).
inline double interp_cubic(const ScalarField2D& f, Vec2 p) {
    const auto& g = f.grid;
    const long n = static_cast<long>(g.n);
    const double h = g.h();
    const double sx = (p.x - (g.center.x - 0.5 * g.side)) / h;
    const double sy = (p.y - (g.center.y - 0.5 * g.side)) / h;
    const double fx = std::floor(sx), fy = std::floor(sy);
    const double tx = sx - fx, ty = sy - fy;
    auto weights = [](double t, double w[4]) {
        w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
        w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
        w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
    };
    double wx[4], wy[4];
    weights(tx, wx);
    weights(ty, wy);
    const long jx = static_cast<long>(fx), iy = static_cast<long>(fy);
    double s = 0.0;
    for (int a = 0; a < 4; ++a) {
        long i = ((iy - 1 + a) % n + n) % n;
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            long j = ((jx - 1 + b) % n + n) % n;
            row += wx[b] * f.values[static_cast<std::size_t>(i * n + j)];
        }
        s += wy[a] * row;
    }
    return s;
}

struct AdvectOptions {
    double safety = 2.0;               // dt sup|u| <= safety * h
    bool mass_fix = true;              // restore the integral after each step, proportionally to |rho|
    std::vector<double> snapshot_times;  // extra frames to keep (the final time is always kept)
};

struct ScalarTrajectory {
    std::vector<double> times;
    std::vector<ScalarField2D> frames;
    std::size_t steps = 0;

    const ScalarField2D& final() const { return frames.back(); }
    const ScalarField2D& at(double t) const {
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, t)) return frames[i];
        throw precondition_error("trajectory has no frame at the requested time");
    }
};

namespace detail {

inline double max_speed_on(const VelocityField& u, double t, const Grid2D& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) m = std::max(m, u.at(t, g.point(i, j)).norm());
    return m;
}

// One semi-Lagrangian step from t to t + dt: backtrack with RK4, interpolate.
inline ScalarField2D sl_step(const VelocityField& u, const ScalarField2D& rho, double t, double dt) {
    const auto& g = rho.grid;
    ScalarField2D out(g);
    out.support_radius = rho.support_radius;
    const double t1 = t + dt, tm = t + 0.5 * dt;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const Vec2 x = g.point(i, j);
            const Vec2 k1 = u.at(t1, x);
            const Vec2 k2 = u.at(tm, x - k1 * (0.5 * dt));
            const Vec2 k3 = u.at(tm, x - k2 * (0.5 * dt));
            const Vec2 k4 = u.at(t, x - k3 * dt);
            const Vec2 X = x - (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
            out.at(i, j) = interp_cubic(rho, X);
        }
    return out;
}

inline void fix_mass(ScalarField2D& rho, double target_sum) {
    double sum = 0.0, abs_sum = 0.0;
    for (double v : rho.values) {
        sum += v;
        abs_sum += std::abs(v);
    }
    if (abs_sum == 0.0) return;
    const double k = (target_sum - sum) / abs_sum;
    for (double& v : rho.values) v += k * std::abs(v);
}

}  // namespace detail

// Semi-Lagrangian transport d_t rho + u . grad rho = 0 on the periodic grid of theta, up to tmax.
// Steps never straddle a switch instant of a piecewise velocity or a requested snapshot time.
inline ScalarTrajectory advect(const VelocityField& u, const ScalarField2D& theta, double tmax, double dt,
                               const AdvectOptions& opt = {}) {
    theta.grid.validate();
    require(tmax >= 0.0, "advect: tmax must be nonnegative");
    require(dt > 0.0, "advect: dt must be positive");
    require(opt.safety > 0.0, "advect: safety factor must be positive");

    std::vector<double> nodes{0.0, tmax};
    for (double s : u.switch_times(0.0, tmax)) nodes.push_back(s);
    for (double s : opt.snapshot_times)
        if (s > 0.0 && s < tmax) nodes.push_back(s);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    ScalarTrajectory tr;
    tr.times.push_back(0.0);
    tr.frames.push_back(theta);
    if (tmax == 0.0) return tr;

    double target = 0.0;
    for (double v : theta.values) target += v;
    const double h = theta.grid.h();
    ScalarField2D rho = theta;
    for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
        const double a = nodes[seg], b = nodes[seg + 1];
        const auto steps = static_cast<std::size_t>(std::ceil((b - a) / dt - 1e-9));
        const double step = (b - a) / static_cast<double>(std::max<std::size_t>(steps, 1));
        for (std::size_t k = 0; k < std::max<std::size_t>(steps, 1); ++k) {
            const double t = a + step * static_cast<double>(k);
            const double speed = detail::max_speed_on(u, t, theta.grid);
            if (step * speed > opt.safety * h * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "advect: step bound violated: dt*sup|u| = " << step * speed << " > safety*h = " << opt.safety * h
                   << " at t=" << t;
                throw precondition_error(os.str());
            }
            rho = detail::sl_step(u, rho, t, step);
            if (opt.mass_fix) detail::fix_mass(rho, target);
            ++tr.steps;
        }
        if (b == tmax || std::find(opt.snapshot_times.begin(), opt.snapshot_times.end(), b) != opt.snapshot_times.end()) {
            tr.times.push_back(b);
            tr.frames.push_back(rho);
        }
    }
    return tr;
}

// Rigid rotation with angular speed omega about the grid center.
inline VelocityField rotation_velocity(double omega = 1.0, Vec2 center = {}) {
    VelocityField u;
    u.at = [omega, center](double, Vec2 x) { return Vec2{-omega * (x.y - center.y), omega * (x.x - center.x)}; };
    return u;
}

}  // namespace pathology
