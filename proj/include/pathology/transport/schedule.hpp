#pragma once

#include "../errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pathology {

// Shrink factors lambda_n and amplitudes gamma_n for the rescaled copies, plus the constant ell_d
// with n^2 lambda_n^{d/p} <= ell_d p^4.
struct RescaleSchedule {
    std::function<double(long)> lambda;
    std::function<double(long)> gamma;
    // log lambda_n and log gamma_n, so checks far down the tail do not underflow
    std::function<double(long)> log_lambda;
    std::function<double(long)> log_gamma;
    int d = 2;
    double ell_d = 0;
    long ell_argmax_n = 0;
    double ell_argmax_p = 0;
};

inline std::vector<double> log_grid(double a, double b, std::size_t points) {
    require(a > 0.0 && b > a && points >= 2, "log_grid: need 0 < a < b and at least two points");
    std::vector<double> out(points);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(points - 1));
    out.front() = a;
    out.back() = b;
    return out;
}

struct EllEstimate {
    double value = 0;
    long n = 0;
    double p = 0;
};

// max over n <= nmax and p in the log grid of n^2 lambda_n^{d/p} / p^4.
inline EllEstimate estimate_ell(const RescaleSchedule& s, long nmax = 400, std::size_t p_points = 2000) {
    EllEstimate e;
    double best = -std::numeric_limits<double>::infinity();
    for (double p : log_grid(1.0, 1e4, p_points))
        for (long n = 1; n <= nmax; ++n) {
            const double v = 2.0 * std::log(static_cast<double>(n)) + s.d / p * s.log_lambda(n) - 4.0 * std::log(p);
            if (v > best) {
                best = v;
                e.n = n;
                e.p = p;
            }
        }
    e.value = std::exp(best);
    return e;
}

// lambda_n = exp(-sqrt n), gamma_n = exp(-n^{2/3}).
inline RescaleSchedule default_schedule(std::size_t p_points = 2000) {
    RescaleSchedule s;
    s.log_lambda = [](long n) { return -std::sqrt(static_cast<double>(n)); };
    s.log_gamma = [](long n) { return -std::cbrt(static_cast<double>(n) * static_cast<double>(n)); };
    s.lambda = [f = s.log_lambda](long n) { return std::exp(f(n)); };
    s.gamma = [f = s.log_gamma](long n) { return std::exp(f(n)); };
    s.d = 2;
    const auto e = estimate_ell(s, 400, p_points);
    s.ell_d = e.value;
    s.ell_argmax_n = e.n;
    s.ell_argmax_p = e.p;
    return s;
}

struct TailCheck {
    std::string name;
    bool ok = false;
    double last_log = 0;  // log of the sequence at the end of the range
};

struct ScheduleChecks {
    std::vector<TailCheck> tails;
    bool ell_bound_ok = false;
    double worst_ell_ratio = 0;  // max of n^2 lambda_n^{d/p} / (ell_d p^4) over the checked ranges
    bool all_ok() const {
        if (!ell_bound_ok) return false;
        for (const auto& t : tails)
            if (!t.ok) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& t : tails)
            if (!t.ok) return t.name;
        return ell_bound_ok ? "" : "ell_d bound";
    }
};

namespace detail {
// The log-sequence is monotone in the required direction on the second half of [1, nmax]
// and has passed `margin` in that direction by the end.
inline TailCheck monotone_tail(const std::string& name, const std::function<double(long)>& logseq, long nmax,
                               bool to_zero, double margin = 1.0) {
    TailCheck t;
    t.name = name;
    t.ok = true;
    double prev = logseq(nmax / 2);
    for (long n = nmax / 2 + 1; n <= nmax; ++n) {
        const double v = logseq(n);
        if (to_zero ? v > prev : v < prev) t.ok = false;
        prev = v;
    }
    t.last_log = prev;
    if (to_zero ? prev > -margin : prev < margin) t.ok = false;
    return t;
}
}  // namespace detail

// n lambda_n -> 0, gamma_n / lambda_n^a -> 0, gamma_n lambda_n^a e^{bn} -> inf for a, b in the samples,
// and the ell_d bound on n <= nmax, p in a log grid on [1, 1e4].
inline ScheduleChecks schedule_checks(const RescaleSchedule& s, long nmax = 400,
                                      const std::vector<double>& samples = {0.5, 1.0, 2.0},
                                      std::size_t p_points = 2000) {
    ScheduleChecks c;
    c.tails.push_back(detail::monotone_tail(
        "n*lambda_n -> 0", [&](long n) { return std::log(static_cast<double>(n)) + s.log_lambda(n); }, nmax, true));
    for (double a : samples) {
        c.tails.push_back(detail::monotone_tail(
            "gamma_n/lambda_n^" + std::to_string(a) + " -> 0",
            [&, a](long n) { return s.log_gamma(n) - a * s.log_lambda(n); }, nmax, true));
        for (double b : samples)
            c.tails.push_back(detail::monotone_tail(
                "gamma_n*lambda_n^" + std::to_string(a) + "*exp(" + std::to_string(b) + "n) -> inf",
                [&, a, b](long n) { return s.log_gamma(n) + a * s.log_lambda(n) + b * static_cast<double>(n); }, nmax,
                false));
    }
    c.worst_ell_ratio = 0.0;
    for (double p : log_grid(1.0, 1e4, p_points))
        for (long n = 1; n <= nmax; ++n) {
            const double lr = 2.0 * std::log(static_cast<double>(n)) + s.d / p * s.log_lambda(n) - 4.0 * std::log(p) -
                              std::log(s.ell_d);
            c.worst_ell_ratio = std::max(c.worst_ell_ratio, std::exp(lr));
        }
    c.ell_bound_ok = c.worst_ell_ratio <= 1.0 + 1e-12;
    return c;
}

struct BudgetRow {
    long n = 0;
    double log_bound_term = 0;  // log(C gamma_n lambda_n^{d/2} exp(c n / k0^2))
    double lower_bound = 0;     // C gamma_n lambda_n^{d/2} exp(c n / k0^2) - Gamma0 (may be +inf)
    bool exceeds = false;       // lower_bound > k0
};

struct BudgetTable {
    std::vector<BudgetRow> rows;
    std::optional<long> crossing;  // first n whose lower bound exceeds k0
};

// Lower bound C gamma_n lambda_n^{d/2} exp((c/k0^2) n) - Gamma0 for the Sobolev norm of the rescaled solution.
inline BudgetTable blowup_budget(const RescaleSchedule& s, int k0, double Gamma0, double C, double c,
                                 const std::vector<long>& n_range) {
    require(k0 >= 1, "blowup_budget: k0 must be a positive integer");
    require(C > 0.0 && c > 0.0 && Gamma0 >= 0.0, "blowup_budget: need C > 0, c > 0, Gamma0 >= 0");
    BudgetTable t;
    const double k2 = static_cast<double>(k0) * k0;
    for (long n : n_range) {
        require(n >= 1, "blowup_budget: n must be positive");
        BudgetRow r;
        r.n = n;
        r.log_bound_term =
            std::log(C) + s.log_gamma(n) + 0.5 * s.d * s.log_lambda(n) + c / k2 * static_cast<double>(n);
        r.lower_bound = std::exp(r.log_bound_term) - Gamma0;
        // compare in logs so an overflowing exponential still decides correctly
        r.exceeds = r.log_bound_term > std::log(static_cast<double>(k0) + Gamma0);
        if (r.exceeds && !t.crossing) t.crossing = n;
        t.rows.push_back(r);
    }
    return t;
}

struct ClosedFormCrossing {
    double root = 0;  // real solution of log C + c n / k0^2 - n^{2/3} - n^{1/2} = log(k0 + Gamma0)
    long index = 0;   // first integer beyond the root
};

// For the default schedule in d = 2 the exponent g(n) = log C + c n/k0^2 - n^{2/3} - sqrt n - log(k0 + Gamma0)
// is convex on n > 0, so past its minimum there is exactly one root.
inline ClosedFormCrossing closed_form_crossing(int k0, double Gamma0, double C, double c) {
    require(k0 >= 1 && C > 0.0 && c > 0.0 && Gamma0 >= 0.0, "closed_form_crossing: bad constants");
    const double a = c / (static_cast<double>(k0) * k0);
    const double shift = std::log(C) - std::log(k0 + Gamma0);
    auto g = [&](double n) { return shift + a * n - std::cbrt(n * n) - std::sqrt(n); };
    auto dg = [&](double n) { return a - 2.0 / 3.0 / std::cbrt(n) - 0.5 / std::sqrt(n); };
    boost::math::tools::eps_tolerance<double> tol(50);
    // minimum of g: dg is increasing from -inf
    double hi = 1.0;
    while (dg(hi) < 0.0) hi *= 2.0;
    double nmin = 0.0;
    if (hi > 1.0) {
        auto br = boost::math::tools::bisect(dg, hi / 2.0, hi, tol);
        nmin = 0.5 * (br.first + br.second);
    }
    ClosedFormCrossing out;
    double lo = std::max(nmin, 1e-12);
    if (g(lo) > 0.0) {
        out.root = lo;
    } else {
        double up = std::max(2.0 * lo, 1.0);
        while (g(up) <= 0.0) up *= 2.0;
        auto br = boost::math::tools::bisect(g, lo, up, tol);
        out.root = 0.5 * (br.first + br.second);
    }
    out.index = std::max<long>(1, static_cast<long>(std::floor(out.root)) + 1);
    return out;
}

}  // namespace pathology
