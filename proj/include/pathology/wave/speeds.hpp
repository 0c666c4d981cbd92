#pragma once

#include "../errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace pathology {

// A speed coefficient together with a Lipschitz constant valid on [0, inf).
struct LipschitzSpeed {
    std::function<double(double)> c;
    double L = 0;
    double mu1 = 1, mu2 = 1;  // range guaranteed by construction
};

// mean + sum_k a_k sin(w_k t + p_k) with sum |a_k| <= (mu2 - mu1)/2, so the range stays in [mu1, mu2].
template <class Rng>
LipschitzSpeed random_lipschitz_speed(Rng& rng, double mu1, double mu2, double max_freq, int terms = 3) {
    require(mu1 > 0.0 && mu2 > mu1 && max_freq > 0.0 && terms >= 1, "random_lipschitz_speed: bad parameters");
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double mean = 0.5 * (mu1 + mu2), half = 0.5 * (mu2 - mu1);
    std::vector<double> a(terms), w(terms), p(terms);
    double wsum = 0.0;
    for (int k = 0; k < terms; ++k) {
        a[k] = u01(rng);
        wsum += a[k];
    }
    const double fill = 0.5 + 0.5 * u01(rng);  // use 50% to 100% of the allowed swing
    double L = 0.0;
    for (int k = 0; k < terms; ++k) {
        a[k] *= fill * half / wsum;
        w[k] = max_freq * u01(rng);
        p[k] = 2.0 * 3.141592653589793 * u01(rng);
        L += std::abs(a[k]) * w[k];
    }
    LipschitzSpeed s;
    s.c = [mean, a, w, p](double t) {
        double v = mean;
        for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::sin(w[k] * t + p[k]);
        return v;
    };
    s.L = L;
    s.mu1 = mu1;
    s.mu2 = mu2;
    return s;
}

// Parametric resonance: mean (1 + h sin(2 lambda sqrt(mean) t)) pumps energy at the fastest
// rate a smooth periodic speed of this amplitude can achieve for the mode lambda.
inline LipschitzSpeed resonant_speed(double mu1, double mu2, double lambda) {
    require(mu1 > 0.0 && mu2 > mu1 && lambda > 0.0, "resonant_speed: bad parameters");
    const double mean = 0.5 * (mu1 + mu2), h = (mu2 - mu1) / (mu1 + mu2);
    const double w = 2.0 * lambda * std::sqrt(mean);
    LipschitzSpeed s;
    s.c = [mean, h, w](double t) { return mean * (1.0 + h * std::sin(w * t)); };
    s.L = mean * h * w;
    s.mu1 = mu1;
    s.mu2 = mu2;
    return s;
}

// Piecewise linear speed between mu1 and mu2 with slope +-L: starts at mu1, and at each listed
// time the ramp direction flips (first flip turns it upward), continuing from the current value.
inline LipschitzSpeed ramp_speed(double mu1, double mu2, double L, std::vector<double> switch_times) {
    require(mu1 > 0.0 && mu2 > mu1 && L > 0.0, "ramp_speed: bad parameters");
    require(std::is_sorted(switch_times.begin(), switch_times.end()), "ramp_speed: switch times must be sorted");
    LipschitzSpeed s;
    s.L = L;
    s.mu1 = mu1;
    s.mu2 = mu2;
    // value at each switch time, so evaluation never jumps
    std::vector<double> start(switch_times.size());
    double c = mu1;
    for (std::size_t i = 0; i < switch_times.size(); ++i) {
        if (i) {
            const double ramp = (switch_times[i] - switch_times[i - 1]) * L;
            c = (i % 2 == 1) ? std::min(mu2, c + ramp) : std::max(mu1, c - ramp);
        }
        start[i] = c;
    }
    s.c = [mu1, mu2, L, switch_times, start](double t) {
        auto it = std::upper_bound(switch_times.begin(), switch_times.end(), t);
        if (it == switch_times.begin()) return mu1;
        const std::size_t i = static_cast<std::size_t>(it - switch_times.begin()) - 1;
        const double ramp = (t - switch_times[i]) * L;
        return (i % 2 == 0) ? std::min(mu2, start[i] + ramp) : std::max(mu1, start[i] - ramp);
    };
    return s;
}

}  // namespace pathology
