#pragma once

#include "../errors.hpp"
#include "../fn1d.hpp"
#include "../holder.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace pathology {

// gamma(t) = 1 - 16 eps^2 sin^4 t - 8 eps sin 2t,  b(t) = eps (2t - sin 2t),  w(t) = sin t exp(b(t)).
// w solves w'' + gamma w = 0 and grows like exp(2 eps t).
class BasicIngredient {
public:
    explicit BasicIngredient(double epsilon) : eps_(epsilon) {
        require(epsilon > 0.0 && epsilon < 1.0, "basic ingredient: epsilon must lie in (0,1)");
    }

    double epsilon() const { return eps_; }

    double gamma(double t) const {
        double s = std::sin(t);
        double s2 = s * s;
        return 1.0 - 16.0 * eps_ * eps_ * s2 * s2 - 8.0 * eps_ * std::sin(2.0 * t);
    }
    double b(double t) const { return eps_ * (2.0 * t - std::sin(2.0 * t)); }
    double b_t(double t) const {
        double s = std::sin(t);
        return 4.0 * eps_ * s * s;
    }
    double b_tt(double t) const { return 4.0 * eps_ * std::sin(2.0 * t); }

    double w(double t) const { return std::sin(t) * std::exp(b(t)); }
    double w_t(double t) const { return std::exp(b(t)) * (std::cos(t) + std::sin(t) * b_t(t)); }
    double w_tt(double t) const {
        double s = std::sin(t), c = std::cos(t), bp = b_t(t);
        return std::exp(b(t)) * (2.0 * c * bp + s * bp * bp - s + s * b_tt(t));
    }

private:
    double eps_;
};

inline BasicIngredient basic_ingredient(double epsilon) { return BasicIngredient(epsilon); }

// max |w'' + gamma w| over npts uniform points of [0, tmax].
inline double verify_ode_identity(const BasicIngredient& bi, double tmax, std::size_t npts) {
    require(npts >= 2, "verify_ode_identity: need at least two points");
    double worst = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double t = tmax * static_cast<double>(i) / static_cast<double>(npts - 1);
        worst = std::max(worst, std::abs(bi.w_tt(t) + bi.gamma(t) * bi.w(t)));
    }
    return worst;
}

// Least-squares slope of log max_{[k pi, (k+1) pi]} |w| against k pi, k < periods.
inline double envelope_growth_rate(const BasicIngredient& bi, int periods, int samples_per_period = 400) {
    require(periods >= 2, "envelope_growth_rate: need at least two half periods");
    std::vector<double> xs, ys;
    for (int k = 0; k < periods; ++k) {
        double m = 0.0;
        for (int i = 0; i <= samples_per_period; ++i) {
            double t = std::numbers::pi * (k + static_cast<double>(i) / samples_per_period);
            m = std::max(m, std::abs(bi.w(t)));
        }
        xs.push_back(std::numbers::pi * k);
        ys.push_back(std::log(m));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

// Order-alpha constant of (gamma(eps, .) - 1)/eps on [0, 2 pi] for small eps, times 1.1.
inline double derive_Hgamma_raw(double alpha, std::size_t npts = 2048, double eps = 1e-6) {
    require(alpha > 0.0 && alpha <= 1.0, "derive_Hgamma: alpha must lie in (0,1]");
    auto grid = uniform_grid(0.0, 2.0 * std::numbers::pi, npts);
    BasicIngredient bi(eps);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = (bi.gamma(grid[i]) - 1.0) / eps;
    return holder_constant_values(grid, vals, alpha).constant;
}

inline double derive_Hgamma(double alpha, std::size_t npts = 2048, double eps = 1e-6) {
    return 1.1 * derive_Hgamma_raw(alpha, npts, eps);
}

// c_n(t) = m^2 gamma(eps_n, m lambda_n t) on [0, delta_n], c0(t) afterwards.
struct SpeedProfile {
    double m = 1, lambda = 1, alpha = 0.5;
    double eps = 0, delta = 0, delta_n = 0;
    Fn1D c0;

    double operator()(double t) const {
        if (t <= delta_n) return m * m * BasicIngredient(eps).gamma(m * lambda * t);
        return c0(t);
    }
    Fn1D as_fn() const {
        SpeedProfile self = *this;
        Fn1D f;
        f.eval = [self](double t) { return self(t); };
        return f;
    }
    double growth_exponent() const { return 2.0 * eps * m * lambda * delta_n; }
};

inline Fn1D constant_fn(double value) {
    Fn1D f;
    f.eval = [value](double) { return value; };
    f.deriv = [](double) { return 0.0; };
    return f;
}

inline SpeedProfile speed_schedule(double m, double lambda_n, double alpha, double eps1, double H, double Hgamma,
                                   double delta, const Fn1D* c0 = nullptr) {
    require(m > 0 && lambda_n > 0 && alpha > 0 && alpha < 1 && eps1 > 0 && H > 0 && Hgamma > 0 && delta > 0,
            "speed_schedule: all parameters must be positive and alpha in (0,1)");
    SpeedProfile sp;
    sp.m = m;
    sp.lambda = lambda_n;
    sp.alpha = alpha;
    sp.delta = delta;
    sp.eps = eps1 * H / (std::pow(m, alpha + 2.0) * Hgamma) * std::pow(lambda_n, -alpha);
    require(sp.eps < 1.0, "speed_schedule: eps_n >= 1, raise lambda_n or lower H");
    const double turns = std::floor(m * lambda_n * delta / (2.0 * std::numbers::pi) + 1e-9);
    require(turns >= 1.0, "speed_schedule: delta_n = 0 because lambda_n is too small; raise lambda_n");
    sp.delta_n = 2.0 * std::numbers::pi * turns / (m * lambda_n);
    sp.c0 = c0 ? *c0 : constant_fn(m * m);
    require(std::abs(sp.c0(sp.delta_n) - m * m) <= 1e-12 * m * m,
            "speed_schedule: c0 must equal m^2 at delta_n for continuity");
    return sp;
}

// r0 = eps1 H delta / (2 m^{alpha+1} H_gamma).
inline double growth_constant_r0(double m, double alpha, double eps1, double H, double Hgamma, double delta) {
    return eps1 * H * delta / (2.0 * std::pow(m, alpha + 1.0) * Hgamma);
}

}  // namespace pathology
