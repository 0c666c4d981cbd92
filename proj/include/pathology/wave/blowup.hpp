#pragma once

#include "../errors.hpp"
#include "../holder.hpp"
#include "gevrey.hpp"
#include "ingredient.hpp"
#include "mode.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pathology {

struct BlowupConfig {
    double alpha = 0.5;
    double beta = 4.0;
    double B = 4.0;
    double mu1 = 0.5;
    double mu2 = 50.0;
    double H = 670.0;
    double eps1 = 0.5;
    double delta = 0.3 * std::numbers::pi;  // m lambda delta / 2 pi is an integer for dyadic lambda >= 16
    int k0 = 1;
    double m = 5.0;                          // c0 = m^2
    double Hgamma = 0.0;                     // <= 0: derive from alpha
    double tol = 1e-10;
    std::size_t samples = 21;                // output times on [0, k0] per mode
    std::vector<double> lambdas{16, 32, 64, 128, 256, 512};

    void validate() const {
        require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
        const double thr = 1.0 / (1.0 - alpha);
        require(beta > thr && B > thr,
                "derivative-loss hypotheses need beta > 1/(1-alpha) and B > 1/(1-alpha) (beta=" + std::to_string(beta) +
                    ", B=" + std::to_string(B) + ", 1/(1-alpha)=" + std::to_string(thr) + ")");
        require(k0 >= 1, "k0 must be a positive integer");
        require(delta > 0.0 && delta < 1.0 / k0, "delta must lie in (0, 1/k0)");
        require(m > 0.0 && mu1 > 0.0 && mu1 <= m * m && m * m <= mu2, "need mu1 <= m^2 <= mu2");
        require(H > 0.0 && eps1 > 0.0 && eps1 < 1.0, "H > 0 and eps1 in (0,1) required");
        require(tol > 0.0, "tol must be positive");
        require(samples >= 2, "samples must be at least 2");
        require(!lambdas.empty(), "eigenvalue list is empty");
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            require(lambdas[i] >= 1.0, "eigenvalues must be at least 1");
            if (i) require(lambdas[i] > lambdas[i - 1], "eigenvalues must be increasing");
        }
    }
};

struct BlowupRow {
    double lambda = 0, eps = 0, delta_n = 0;
    double v1 = 0;                    // initial velocity of the single mode
    double log_data_norm = 0;         // log norm of (0, v1) in G_{beta, r=1}
    double c_min = 0, c_max = 0;      // range of c_n on [0, k0]
    double holder_c = 0;              // order-alpha constant of c_n - c0 on [0, delta_n] (grid estimate)
    double v_at_delta = 0, vprime_at_delta = 0, vprime_explicit = 0, v_scale = 0;
    double log_E_delta = 0;
    double log_ultra_measured = 0;    // min over the window [1/k0, k0] of log((v^2 + v'^2) e^{-2 k0 lambda^{1/B}})
    double log_ultra_lb = 0;          // lower bound from E(delta_n) and the energy sandwich
    double predicted_exponent = 0;    // log mu3 + r0 lambda^{1-alpha} - 2 lambda^{1/beta} log(1+lambda) - 2 k0 lambda^{1/B}
    double growth_residual = 0;       // log_ultra_lb with all non-growth terms removed
    std::size_t steps = 0;
    ModeSolution solution;
};

struct BlowupResult {
    BlowupConfig cfg;
    double Hgamma = 0, r0 = 0, mu3 = 0;
    std::vector<BlowupRow> rows;
};

inline BlowupResult blowup_demo(BlowupConfig cfg) {
    cfg.validate();
    BlowupResult res;
    res.cfg = cfg;
    res.Hgamma = cfg.Hgamma > 0.0 ? cfg.Hgamma : derive_Hgamma(cfg.alpha);
    res.r0 = growth_constant_r0(cfg.m, cfg.alpha, cfg.eps1, cfg.H, res.Hgamma, cfg.delta);
    const auto eb = EnergyBounds::from(cfg.mu1, cfg.mu2, 0.0);  // c0 constant: L = 0 after delta_n
    res.mu3 = eb.mu3;
    const double k0 = cfg.k0;

    for (double lam : cfg.lambdas) {
        BlowupRow r;
        const auto sp = speed_schedule(cfg.m, lam, cfg.alpha, cfg.eps1, cfg.H, res.Hgamma, cfg.delta);
        r.lambda = lam;
        r.eps = sp.eps;
        r.delta_n = sp.delta_n;
        const double lb = std::pow(lam, 1.0 / cfg.beta) * std::log1p(lam);
        r.v1 = std::exp(-lb) / (1.0 + lam);
        r.log_data_norm = gevrey_norm(GevreyVector{{{lam, r.v1}}}, GevreyFunction{cfg.beta, 1.0}).log_value;

        auto times = linspace(0.0, k0, cfg.samples);
        times.push_back(1.0 / k0);
        times.push_back(sp.delta_n);
        auto sol = integrate_mode(sp, 0.0, r.v1, times, cfg.tol);
        r.steps = sol.steps;

        const std::size_t id = sol.index_of(sp.delta_n);
        r.v_at_delta = sol.v[id];
        r.vprime_at_delta = sol.vprime[id];
        const auto ex = explicit_mode(sp, r.v1);
        r.vprime_explicit = ex.vprime_at_delta();
        r.v_scale = r.vprime_explicit / (cfg.m * lam);
        r.log_E_delta = sol.log_energy(id);

        r.c_min = r.c_max = sp(0.0);
        for (double t : linspace(0.0, k0, 20001)) {
            r.c_min = std::min(r.c_min, sp(t));
            r.c_max = std::max(r.c_max, sp(t));
        }
        {
            auto g = uniform_grid(0.0, sp.delta_n, 4096);
            std::vector<double> vals(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) vals[i] = sp(g[i]) - cfg.m * cfg.m;
            r.holder_c = holder_constant_values(g, vals, cfg.alpha).constant;
        }

        const double ultra = 2.0 * k0 * std::pow(lam, 1.0 / cfg.B);
        r.log_ultra_measured = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sol.times.size(); ++i) {
            const double t = sol.times[i];
            if (t < 1.0 / k0 - 1e-12 || t > k0 + 1e-12) continue;
            const double n2 = sol.v[i] * sol.v[i] + sol.vprime[i] * sol.vprime[i];
            r.log_ultra_measured = std::min(r.log_ultra_measured, std::log(n2) - ultra);
        }
        // v^2 + v'^2 >= E / lambda^2 for lambda >= 1, and E(t) >= mu3 E(delta_n) on the constant tail.
        r.log_ultra_lb = std::log(eb.mu3) + r.log_E_delta - 2.0 * std::log(lam) - ultra;
        r.predicted_exponent = std::log(eb.mu3) + res.r0 * std::pow(lam, 1.0 - cfg.alpha) - 2.0 * lb - ultra;
        r.growth_residual = r.log_ultra_lb - std::log(eb.mu3) + 2.0 * lb + 2.0 * std::log1p(lam) +
                            2.0 * std::log(lam) + ultra;
        r.solution = std::move(sol);
        res.rows.push_back(std::move(r));
    }
    return res;
}

struct GrowthFit {
    double slope = 0;
    double intercept = 0;
    double sharp_slope = 0;  // 8 r0 (delta_n / delta), the coefficient of lambda^{1-alpha} in 4 eps_n m lambda delta_n
    double r0 = 0;
    double rel_error = 0;    // |slope - sharp_slope| / sharp_slope
    std::size_t points = 0;
};

// Least-squares fit of growth_residual against lambda^{1-alpha} over the top half of the rows.
inline GrowthFit fit_growth(const BlowupResult& res) {
    const auto& rows = res.rows;
    require(rows.size() >= 2, "fit_growth: need at least two modes");
    const std::size_t first = rows.size() / 2 == rows.size() - 1 ? rows.size() - 2 : rows.size() / 2;
    std::vector<double> x, y;
    double ratio = 0.0;
    for (std::size_t i = first; i < rows.size(); ++i) {
        x.push_back(std::pow(rows[i].lambda, 1.0 - res.cfg.alpha));
        y.push_back(rows[i].growth_residual);
        ratio += rows[i].delta_n / res.cfg.delta;
    }
    ratio /= static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    GrowthFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r0 = res.r0;
    f.sharp_slope = 8.0 * res.r0 * ratio;
    f.rel_error = std::abs(f.slope - f.sharp_slope) / f.sharp_slope;
    f.points = x.size();
    return f;
}

}  // namespace pathology
