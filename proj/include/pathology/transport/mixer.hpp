#pragma once

#include "../errors.hpp"
#include "advect.hpp"
#include "field.hpp"
#include "spectral.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace pathology {

// Smooth step: 0 for x <= 0, 1 for x >= 1, C-infinity in between.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

inline double smooth_step_deriv(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    const double s = a + b;
    return a * b * (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x))) / (s * s);
}

// Base triple (u_*, theta_*, rho_*): velocity, initial scalar, and the constants the rescaling uses.
// rho_* is produced on demand by advecting theta_* with u_*.
struct BaseTriple {
    VelocityField velocity;
    std::function<double(Vec2)> theta;
    double R = 1.0;        // u_* and theta_* vanish outside the closed ball of radius R about the origin
    double M_u = 0;        // sup |u_*| (measured)
    double M_grad = 0;     // sup |D u_*| (measured, Frobenius)
    double M_theta = 0;    // sup |theta_*|
    double M = 0;          // max of the three
    Grid2D grid;           // base grid the constants were measured on
    double amplitude = 0;
    double switch_period = 0;

    ScalarField2D theta_sampled() const {
        auto f = sample_scalar(theta, grid);
        f.support_radius = R;
        return f;
    }
};

struct MixerOptions {
    double shear_period = 0.5;   // spatial period P of the sinusoidal shears
    double R = 1.0;              // outer radius of the cutoff
    double cutoff_width = 0.4;   // cutoff rises from 0 at R to 1 at R - width
    Vec2 blob_center{0.15, 0.1};
    double blob_radius = 0.35;
    Grid2D grid{256, 2.5, {}};
};

// Stream function of the shear active at time t, before the cutoff.
// Phase 0: u = (A sin(2 pi y / P), 0); phase 1: u = (0, A sin(2 pi x / P)).
inline int shear_phase(double t, double switch_period) {
    const double k = std::floor(t / switch_period);
    return static_cast<int>(std::fmod(k, 2.0) + (k < 0 ? 2.0 : 0.0)) % 2;
}

// Raw alternating shear with no cutoff (periodic in boxes whose side is a multiple of P).
inline VelocityField shear_velocity(double amplitude, double switch_period, double P) {
    require(switch_period > 0.0 && P > 0.0, "shear_velocity: periods must be positive");
    VelocityField u;
    const double k = 2.0 * std::numbers::pi / P;
    u.at = [=](double t, Vec2 x) {
        if (shear_phase(t, switch_period) == 0) return Vec2{amplitude * std::sin(k * x.y), 0.0};
        return Vec2{0.0, amplitude * std::sin(k * x.x)};
    };
    u.tag = TimeDependence::piecewise;
    u.period = 2.0 * switch_period;
    u.breaks = {0.0, switch_period};
    return u;
}

// Alternating sinusoidal shears multiplied, at the level of the stream function, by a radial cutoff,
// so the field stays exactly divergence-free and vanishes for |x| >= R. The initial scalar is a smooth blob.
inline BaseTriple standin_mixer(double amplitude, double switch_period, const MixerOptions& opt = {}) {
    require(amplitude >= 0.0, "standin_mixer: amplitude must be nonnegative");
    require(switch_period > 0.0, "standin_mixer: switch period must be positive");
    require(opt.shear_period > 0.0 && opt.R > 0.0 && opt.cutoff_width > 0.0 && opt.cutoff_width < opt.R,
            "standin_mixer: need P > 0 and 0 < cutoff width < R");
    require(opt.blob_radius > 0.0 && std::hypot(opt.blob_center.x, opt.blob_center.y) + opt.blob_radius <= opt.R,
            "standin_mixer: blob must sit inside the cutoff radius");
    opt.grid.validate();
    require(opt.grid.side >= 2.0 * opt.R, "standin_mixer: grid box must contain the support");

    const double A = amplitude, P = opt.shear_period, R = opt.R, w = opt.cutoff_width;
    const double k = 2.0 * std::numbers::pi / P;
    BaseTriple b;
    b.velocity.at = [=](double t, Vec2 x) {
        const double r = std::hypot(x.x, x.y);
        if (r >= R) return Vec2{};
        const double s = (R - r) / w;
        const double chi = smooth_step(s);
        // grad chi = -S'(s)/w * x/r
        const double dchi = r > 0.0 ? -smooth_step_deriv(s) / (w * r) : 0.0;
        const double gx = dchi * x.x, gy = dchi * x.y;
        // u = (d_y Psi, -d_x Psi) with Psi = chi psi
        if (shear_phase(t, switch_period) == 0) {
            const double psi = -A / k * std::cos(k * x.y);
            return Vec2{chi * A * std::sin(k * x.y) + psi * gy, -psi * gx};
        }
        const double psi = A / k * std::cos(k * x.x);
        return Vec2{psi * gy, chi * A * std::sin(k * x.x) - psi * gx};
    };
    b.velocity.tag = TimeDependence::piecewise;
    b.velocity.period = 2.0 * switch_period;
    b.velocity.breaks = {0.0, switch_period};
    b.velocity.support_radius = R;
    b.velocity.center = {};

    const Vec2 c = opt.blob_center;
    const double rb = opt.blob_radius;
    b.theta = [=](Vec2 x) { return smooth_step((rb - std::hypot(x.x - c.x, x.y - c.y)) / rb); };
    b.R = R;
    b.grid = opt.grid;
    b.amplitude = A;
    b.switch_period = switch_period;

    for (double t : {0.25 * switch_period, 1.25 * switch_period}) {
        const auto u = b.velocity.sample(t, opt.grid);
        b.M_u = std::max(b.M_u, u.max_speed());
        const auto G = spectral_gradient(u);
        for (std::size_t i = 0; i < u.grid.size(); ++i) b.M_grad = std::max(b.M_grad, G.frobenius(i));
    }
    b.M_theta = b.theta_sampled().max_abs();
    b.M = std::max({b.M_u, b.M_grad, b.M_theta});
    return b;
}

struct MixingDiagnostics {
    std::vector<double> times;
    std::vector<double> h1;           // homogeneous H^1 norm of rho_*(t)
    std::vector<double> high_fraction;  // share of the norm in the top third of the spectrum
    double slope = 0;                 // least-squares slope of log h1 against t
    double slope_lo = 0, slope_hi = 0;  // 95% confidence interval
    double intercept = 0;
    double l2_drift = 0;              // max relative change of the L^2 norm
    double mean_drift = 0;            // max absolute change of the mean
    ScalarTrajectory trajectory;
};

// Evolves theta_* under u_* and fits the growth of its H^1 norm. Measured, not asserted.
inline MixingDiagnostics mixing_diagnostics(const BaseTriple& b, double tmax, double dt, std::size_t frames = 9) {
    require(tmax > 0.0 && frames >= 3, "mixing_diagnostics: need tmax > 0 and at least three frames");
    AdvectOptions opt;
    for (std::size_t i = 1; i + 1 < frames; ++i)
        opt.snapshot_times.push_back(tmax * static_cast<double>(i) / static_cast<double>(frames - 1));
    MixingDiagnostics d;
    const auto theta = b.theta_sampled();
    d.trajectory = advect(b.velocity, theta, tmax, dt, opt);
    const double l2_0 = theta.l2_norm(), m0 = theta.mean();
    std::vector<double> y;
    for (std::size_t i = 0; i < d.trajectory.times.size(); ++i) {
        const auto& f = d.trajectory.frames[i];
        const auto hs = hs_norm_report(f, 1.0);
        d.times.push_back(d.trajectory.times[i]);
        d.h1.push_back(hs.value);
        d.high_fraction.push_back(hs.high_fraction);
        y.push_back(std::log(hs.value));
        d.l2_drift = std::max(d.l2_drift, std::abs(f.l2_norm() - l2_0) / l2_0);
        d.mean_drift = std::max(d.mean_drift, std::abs(f.mean() - m0));
    }
    const std::size_t n = y.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += d.times[i]; my += y[i]; }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (d.times[i] - mx) * (d.times[i] - mx);
        sxy += (d.times[i] - mx) * (y[i] - my);
    }
    d.slope = sxy / sxx;
    d.intercept = my - d.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - d.intercept - d.slope * d.times[i];
        rss += e * e;
    }
    const double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    boost::math::students_t dist(static_cast<double>(n - 2));
    const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
    d.slope_lo = d.slope - q * se;
    d.slope_hi = d.slope + q * se;
    return d;
}

}  // namespace pathology
