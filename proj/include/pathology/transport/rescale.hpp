#pragma once

#include "../errors.hpp"
#include "advect.hpp"
#include "field.hpp"
#include "mixer.hpp"
#include "schedule.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace pathology {

// u_n(t,x) = n lambda_n u_*(n t, (x - x0)/lambda_n), theta_n(x) = gamma_n theta_*((x - x0)/lambda_n).
struct RescaledTriple {
    long n = 0;
    double lambda = 0, gamma = 0;
    Vec2 x0{};
    double support_radius = 0;  // lambda_n R
    double sup_u_bound = 0;     // M n lambda_n
    VelocityField velocity;
    std::function<double(Vec2)> theta;
    ScalarField2D theta_sampled;

    // rho_n(t, x) = gamma_n rho_*(n t, (x - x0)/lambda_n), given a frame of rho_* at time n t.
    double predicted_rho(const ScalarField2D& rho_star_at_nt, Vec2 x) const {
        const Vec2 y{(x.x - x0.x) / lambda, (x.y - x0.y) / lambda};
        const auto& g = rho_star_at_nt.grid;
        if (std::abs(y.x - g.center.x) >= 0.5 * g.side || std::abs(y.y - g.center.y) >= 0.5 * g.side) return 0.0;
        return gamma * interp_cubic(rho_star_at_nt, y);
    }
};

inline VelocityField rescale_velocity(const VelocityField& u, double lambda, double n, Vec2 x0) {
    VelocityField v;
    const double a = n * lambda;
    v.at = [u, a, lambda, n, x0](double t, Vec2 x) {
        const Vec2 y{(x.x - x0.x) / lambda, (x.y - x0.y) / lambda};
        if (std::isfinite(u.support_radius) && std::hypot(y.x - u.center.x, y.y - u.center.y) > u.support_radius)
            return Vec2{};
        return u.at(n * t, y) * a;
    };
    v.tag = u.tag;
    v.period = u.period / n;
    v.breaks = u.breaks;
    for (double& b : v.breaks) b /= n;
    v.support_radius = u.support_radius * lambda;
    v.center = x0 + u.center * lambda;
    if (u.custom_switches)
        v.custom_switches = [u, n](double a0, double b0) {
            auto s = u.custom_switches(n * a0, n * b0);
            for (double& t : s) t /= n;
            return s;
        };
    return v;
}

// Sum of two fields; switch instants are the union of both patterns.
inline VelocityField sum_velocity(const VelocityField& a, const VelocityField& b) {
    VelocityField s;
    s.at = [a, b](double t, Vec2 x) { return a.at(t, x) + b.at(t, x); };
    s.tag = (a.tag == TimeDependence::piecewise || b.tag == TimeDependence::piecewise) ? TimeDependence::piecewise
                                                                                       : TimeDependence::steady;
    s.custom_switches = [a, b](double t0, double t1) {
        auto x = a.switch_times(t0, t1), y = b.switch_times(t0, t1);
        x.insert(x.end(), y.begin(), y.end());
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        return x;
    };
    // smallest ball about the origin holding both supports
    s.center = {};
    s.support_radius = std::max(std::hypot(a.center.x, a.center.y) + a.support_radius,
                                std::hypot(b.center.x, b.center.y) + b.support_radius);
    return s;
}

struct RescaleOptions {
    double eps1 = 0.1;          // placement window 1 - eps1 < |x0| < 1
    std::size_t min_cells = 8;  // grid cells across the rescaled support radius
};

inline RescaledTriple rescale_triple(const BaseTriple& base, const RescaleSchedule& sched, long n, Vec2 x0,
                                     const Grid2D& grid, const RescaleOptions& opt = {}) {
    grid.validate();
    require(n >= 1, "rescale_triple: n must be positive");
    const double r0 = std::hypot(x0.x, x0.y);
    require(r0 > 1.0 - opt.eps1 && r0 < 1.0,
            "rescale_triple: placement needs 1 - eps1 < |x0| < 1, got |x0| = " + std::to_string(r0));
    RescaledTriple t;
    t.n = n;
    t.lambda = sched.lambda(n);
    t.gamma = sched.gamma(n);
    t.x0 = x0;
    t.support_radius = t.lambda * base.R;
    t.sup_u_bound = base.M * static_cast<double>(n) * t.lambda;

    // one support radius of margin to the box edge
    const double reach = std::max(std::abs(x0.x - grid.center.x), std::abs(x0.y - grid.center.y)) + 2.0 * t.support_radius;
    if (reach > 0.5 * grid.side) {
        std::ostringstream os;
        os << "rescaled support (radius " << t.support_radius << " about |x0| = " << r0
           << ") overflows the grid box of side " << grid.side << "; required box side >= " << 2.0 * reach;
        throw precondition_error(os.str());
    }
    if (t.support_radius < static_cast<double>(opt.min_cells) * grid.h()) {
        const double need = static_cast<double>(opt.min_cells) * grid.side / t.support_radius;
        std::size_t req = 4;
        while (static_cast<double>(req) < need) req *= 2;
        std::ostringstream os;
        os << "rescaled support (radius " << t.support_radius << ") is under-resolved on grid " << grid.n
           << "; required grid >= " << req;
        throw precondition_error(os.str());
    }

    t.velocity = rescale_velocity(base.velocity, t.lambda, static_cast<double>(n), x0);
    const double lam = t.lambda, gam = t.gamma;
    const auto th = base.theta;
    const double R = base.R;
    t.theta = [th, lam, gam, x0, R](Vec2 x) {
        const Vec2 y{(x.x - x0.x) / lam, (x.y - x0.y) / lam};
        if (std::hypot(y.x, y.y) > R) return 0.0;
        return gam * th(y);
    };
    t.theta_sampled = sample_scalar(t.theta, grid);
    t.theta_sampled.support_radius = t.support_radius;
    return t;
}

// Same samples, box shrunk by lambda about x0: the exact sampling of gamma f((x - x0)/lambda).
inline ScalarField2D box_rescale(const ScalarField2D& f, double lambda, double gamma, Vec2 x0) {
    ScalarField2D g = f;
    g.grid.side = f.grid.side * lambda;
    g.grid.center = x0 + f.grid.center * lambda;
    for (double& v : g.values) v *= gamma;
    if (f.support_radius) g.support_radius = *f.support_radius * lambda;
    return g;
}

// Samples of n lambda u((x - x0)/lambda) on the shrunk box.
inline VectorField2D box_rescale(const VectorField2D& u, double lambda, double n, Vec2 x0) {
    VectorField2D v = u;
    v.grid.side = u.grid.side * lambda;
    v.grid.center = x0 + u.grid.center * lambda;
    for (double& c : v.ux) c *= n * lambda;
    for (double& c : v.uy) c *= n * lambda;
    return v;
}

// First n whose rescaled support |x - x0| <= lambda_n R misses the ball of radius r_inner.
inline std::optional<long> first_disjoint_n(const RescaleSchedule& s, double R, Vec2 x0, double r_inner,
                                            long nmax = 400) {
    const double r0 = std::hypot(x0.x, x0.y);
    for (long n = 1; n <= nmax; ++n)
        if (r0 - s.lambda(n) * R > r_inner) return n;
    return std::nullopt;
}

// Area of the unit disk.
inline constexpr double kUnitBall2 = std::numbers::pi;

// ||D u_n||_{L^p} <= M n (omega_2 R^2 lambda_n^2)^{1/p}.
inline double rescaled_sobolev_bound(double M, double R, long n, double lambda, double p) {
    return M * static_cast<double>(n) * std::pow(kUnitBall2 * R * R * lambda * lambda, 1.0 / p);
}

// The composed field u0 + u_n (disjoint supports, ||D u0||_p <= (1 - eps1) p^4) stays in the budget p^4
// once 1 - eps1 + M ell_d (omega_2 R^2)^{1/p} / n <= 1.
inline double composed_budget_lhs(double eps1, double M, double ell_d, double R, long n, double p) {
    return 1.0 - eps1 + M * ell_d * std::pow(kUnitBall2 * R * R, 1.0 / p) / static_cast<double>(n);
}

inline bool composed_admissible(double eps1, double M, double ell_d, double R, long n, const std::vector<double>& ps) {
    for (double p : ps)
        if (composed_budget_lhs(eps1, M, ell_d, R, n, p) > 1.0) return false;
    return true;
}

struct AdmissibilityReport {
    bool support_ok = false;     // vanishes outside the closed unit ball
    bool sup_ok = false;         // sup |u| <= 1
    bool sobolev_ok = false;     // ||D u||_{L^p} <= budget(p) on the p grid
    bool divergence_ok = false;  // spectral divergence small against the gradient
    double sup_u = 0;
    double worst_sobolev_ratio = 0;  // max of ||D u||_p / budget(p)
    double worst_p = 0;
    double max_div_ratio = 0;
    double outside_max = 0;      // largest |u| sampled outside the unit ball
    bool all_ok() const { return support_ok && sup_ok && sobolev_ok && divergence_ok; }
    std::string first_failure() const {
        if (!support_ok) return "support in unit ball";
        if (!sup_ok) return "sup norm <= 1";
        if (!sobolev_ok) return "gradient L^p budget";
        if (!divergence_ok) return "divergence-free";
        return "";
    }
};

inline double p4_budget(double p) { return p * p * p * p; }

inline AdmissibilityReport check_admissible(const VelocityField& u, const Grid2D& grid, const std::vector<double>& times,
                                            const std::function<double(double)>& budget = p4_budget,
                                            const std::vector<double>& p_grid = {1, 1.5, 2, 3, 4, 8, 16, 64},
                                            double div_tol = 1e-8) {
    grid.validate();
    require(!times.empty(), "check_admissible: need at least one time");
    AdmissibilityReport r;
    r.support_ok = std::hypot(u.center.x, u.center.y) + u.support_radius <= 1.0 + 1e-12;
    r.sup_ok = r.sobolev_ok = r.divergence_ok = true;
    for (double t : times) {
        const auto f = u.sample(t, grid);
        for (std::size_t i = 0; i < grid.n; ++i)
            for (std::size_t j = 0; j < grid.n; ++j) {
                const Vec2 x = grid.point(i, j);
                const std::size_t k = i * grid.n + j;
                const double sp = std::hypot(f.ux[k], f.uy[k]);
                r.sup_u = std::max(r.sup_u, sp);
                if (x.norm() > 1.0) r.outside_max = std::max(r.outside_max, sp);
            }
        for (double p : p_grid) {
            const double ratio = w1p_norm(f, p) / budget(p);
            if (ratio > r.worst_sobolev_ratio) {
                r.worst_sobolev_ratio = ratio;
                r.worst_p = p;
            }
        }
        r.max_div_ratio = std::max(r.max_div_ratio, divergence_report(f).ratio());
    }
    if (r.outside_max > 0.0) r.support_ok = false;
    r.sup_ok = r.sup_u <= 1.0 + 1e-12;
    r.sobolev_ok = r.worst_sobolev_ratio <= 1.0 + 1e-12;
    r.divergence_ok = r.max_div_ratio <= div_tol;
    return r;
}

}  // namespace pathology
