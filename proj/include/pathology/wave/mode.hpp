#pragma once

#include "../errors.hpp"
#include "ingredient.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace pathology {

struct ModeSolution {
    std::vector<double> times, v, vprime;
    double lambda = 0;
    std::size_t steps = 0;
    double tol = 0;

    double energy(std::size_t i) const { return vprime[i] * vprime[i] + lambda * lambda * v[i] * v[i]; }
    double log_energy(std::size_t i) const { return std::log(energy(i)); }
    std::size_t index_of(double t) const {
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
        throw precondition_error("time not among the solution's output times");
    }
};

// v'' + lambda^2 c(t) v = 0 with v(0) = v0, v'(0) = v1, reported at `times` (sorted, starting at 0).
// Dormand-Prince 5(4) with dense output; the integration restarts at each breakpoint so kinks
// in c do not fall inside a step.
inline ModeSolution integrate_mode(const std::function<double(double)>& c, double lambda, double v0, double v1,
                                   std::vector<double> times, double tol, std::vector<double> breakpoints = {}) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;
    require(tol > 0.0, "integrate_mode: tol must be positive");
    require(lambda > 0.0, "integrate_mode: lambda must be positive");
    times.push_back(0.0);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    require(times.front() >= 0.0, "integrate_mode: times must be nonnegative");
    const double tmax = times.back();

    std::vector<double> cuts{0.0};
    for (double b : breakpoints)
        if (b > 0.0 && b < tmax) cuts.push_back(b);
    cuts.push_back(tmax);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    ModeSolution sol;
    sol.lambda = lambda;
    sol.tol = tol;
    const double l2 = lambda * lambda;
    // The equation is linear: integrate data of unit energy scale so the absolute tolerance
    // means the same thing whatever the size of (v0, v1), then scale back.
    double scale = std::max(std::abs(v0) * lambda, std::abs(v1));
    if (scale == 0.0) scale = 1.0;
    auto rhs = [&](const State& x, State& dx, double t) {
        dx[0] = x[1];
        dx[1] = -l2 * c(t) * x[0];
    };
    State x{v0 / scale, v1 / scale};
    auto observe = [&](const State& s, double t) {
        if (!sol.times.empty() && sol.times.back() == t) return;
        sol.times.push_back(t);
        sol.v.push_back(s[0] * scale);
        sol.vprime.push_back(s[1] * scale);
    };
    try {
        for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
            const double a = cuts[seg], b = cuts[seg + 1];
            std::vector<double> obs{a};
            for (double t : times)
                if (t > a && t < b) obs.push_back(t);
            obs.push_back(b);
            auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
            const double dt0 = std::min((b - a) / 10.0, 0.01 / (lambda * std::sqrt(std::max(1e-300, std::abs(c(a))) + 1.0)));
            sol.steps += ode::integrate_times(stepper, rhs, x, obs.begin(), obs.end(), dt0, observe,
                                              ode::max_step_checker(20'000'000));
            if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw integration_failure("non-finite state");
        }
    } catch (const integration_failure& e) {
        std::ostringstream os;
        os << "integrate_mode: " << e.what() << " (lambda=" << lambda << ", tol=" << tol << ")";
        throw integration_failure(os.str());
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "integrate_mode: integrator gave up: " << e.what() << " (lambda=" << lambda << ", tol=" << tol
           << ", reached t=" << (sol.times.empty() ? 0.0 : sol.times.back()) << ")";
        throw integration_failure(os.str());
    }
    // Keep only the requested times (breakpoints are added to the output when requested).
    ModeSolution out;
    out.lambda = lambda;
    out.tol = tol;
    out.steps = sol.steps;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        if (std::binary_search(times.begin(), times.end(), sol.times[i])) {
            out.times.push_back(sol.times[i]);
            out.v.push_back(sol.v[i]);
            out.vprime.push_back(sol.vprime[i]);
        }
    }
    out.v.front() = v0;
    out.vprime.front() = v1;
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1) t.back() = b;
    return t;
}

inline ModeSolution integrate_mode(const std::function<double(double)>& c, double lambda, double v0, double v1,
                                   double tmax, double tol, std::size_t samples = 201) {
    require(tmax > 0.0, "integrate_mode: tmax must be positive");
    return integrate_mode(c, lambda, v0, v1, linspace(0.0, tmax, samples), tol);
}

// For a speed profile the kink at delta_n becomes a breakpoint and an output time.
inline ModeSolution integrate_mode(const SpeedProfile& sp, double v0, double v1, std::vector<double> times, double tol) {
    times.push_back(sp.delta_n);
    return integrate_mode([&sp](double t) { return sp(t); }, sp.lambda, v0, v1, std::move(times), tol, {sp.delta_n});
}

// Exact solution on [0, delta_n] with v(0) = 0, v'(0) = v1: v = v1/(m lambda) w(eps, m lambda t).
struct ExplicitMode {
    SpeedProfile sp;
    double v1;
    double v(double t) const { return v1 / (sp.m * sp.lambda) * BasicIngredient(sp.eps).w(sp.m * sp.lambda * t); }
    double vprime(double t) const { return v1 * BasicIngredient(sp.eps).w_t(sp.m * sp.lambda * t); }
    // v'(delta_n) = v1 exp(2 eps m lambda delta_n).
    double vprime_at_delta() const { return v1 * std::exp(sp.growth_exponent()); }
    double log_vprime_at_delta() const { return std::log(std::abs(v1)) + sp.growth_exponent(); }
};

inline ExplicitMode explicit_mode(const SpeedProfile& sp, double v1) { return ExplicitMode{sp, v1}; }

// Constants of the energy sandwich
//   mu3 E(t0) exp(-mu4 (t - t0)) <= E(t) <= mu5 E(t0) exp(mu4 (t - t0)),  t >= t0,
// for mu1 <= c <= mu2 with Lipschitz constant L.
struct EnergyBounds {
    double mu1 = 1, mu2 = 1, L = 0;
    double mu3 = 1, mu4 = 0, mu5 = 1;

    static EnergyBounds from(double mu1, double mu2, double L) {
        require(mu1 > 0.0 && mu2 >= mu1 && L >= 0.0, "EnergyBounds: need 0 < mu1 <= mu2 and L >= 0");
        EnergyBounds e;
        e.mu1 = mu1;
        e.mu2 = mu2;
        e.L = L;
        e.mu3 = std::min(1.0, mu1) * std::min(1.0, 1.0 / mu2);
        e.mu4 = L / mu1;
        e.mu5 = std::max(1.0, 1.0 / mu1) * std::max(1.0, mu2);
        return e;
    }
};

struct EnergyReport {
    bool lower_ok = true;
    bool upper_ok = true;
    // Relative slacks E/lower - 1 and 1 - E/upper; nonnegative means satisfied.
    double worst_lower_slack = std::numeric_limits<double>::infinity();
    double worst_upper_slack = std::numeric_limits<double>::infinity();
    double t0_lower = 0, t_lower = 0, t0_upper = 0, t_upper = 0;
    bool ok(double tol = 1e-8) const { return worst_lower_slack >= -tol && worst_upper_slack >= -tol; }
};

namespace detail {
inline void energy_scan(const ModeSolution& sol, const EnergyBounds& eb, std::size_t i0, EnergyReport& r) {
    const double logE0 = sol.log_energy(i0), t0 = sol.times[i0];
    for (std::size_t i = i0; i < sol.times.size(); ++i) {
        const double dt = sol.times[i] - t0, logE = sol.log_energy(i);
        const double lo = std::expm1(logE - (std::log(eb.mu3) + logE0 - eb.mu4 * dt));
        const double hi = -std::expm1(logE - (std::log(eb.mu5) + logE0 + eb.mu4 * dt));
        if (lo < r.worst_lower_slack) { r.worst_lower_slack = lo; r.t0_lower = t0; r.t_lower = sol.times[i]; }
        if (hi < r.worst_upper_slack) { r.worst_upper_slack = hi; r.t0_upper = t0; r.t_upper = sol.times[i]; }
    }
}
}  // namespace detail

// Checks both inequalities for every output time t >= t0.
inline EnergyReport energy_bounds_check(const ModeSolution& sol, const EnergyBounds& eb, double t0,
                                        double tol = 1e-8) {
    EnergyReport r;
    detail::energy_scan(sol, eb, sol.index_of(t0), r);
    r.lower_ok = r.worst_lower_slack >= -tol;
    r.upper_ok = r.worst_upper_slack >= -tol;
    return r;
}

// Same, taking every output time in turn as t0.
inline EnergyReport energy_bounds_check_all(const ModeSolution& sol, const EnergyBounds& eb, double tol = 1e-8) {
    EnergyReport r;
    for (std::size_t i0 = 0; i0 < sol.times.size(); ++i0) detail::energy_scan(sol, eb, i0, r);
    r.lower_ok = r.worst_lower_slack >= -tol;
    r.upper_ok = r.worst_upper_slack >= -tol;
    return r;
}

}  // namespace pathology
