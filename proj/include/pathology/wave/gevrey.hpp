#pragma once

#include "../errors.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

namespace pathology {

// Coefficients u_i against nondecreasing eigenvalues lambda_i.
struct GevreyVector {
    std::vector<std::pair<double, double>> entries;  // (lambda_i, u_i)

    void validate() const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            require(entries[i].first >= 0.0, "GevreyVector: eigenvalues must be nonnegative");
            if (i) require(entries[i].first >= entries[i - 1].first, "GevreyVector: eigenvalues must be nondecreasing");
        }
    }
};

struct GevreyFunction { double s, r; };      // sum u^2 exp(2 r lambda^{1/s})
struct GevreyInfinity { double s; };         // sum u^2 exp(lambda^{1/s} log(1 + lambda))
struct Ultradistribution { double S, R; };   // sum u^2 exp(-2 R lambda^{1/S})

using GevreyKind = std::variant<GevreyFunction, GevreyInfinity, Ultradistribution>;

struct GevreyNorm {
    double log_value;  // log of the norm (not squared)
    double value;      // exp(log_value), may be inf
};

inline double gevrey_log_weight(double lambda, const GevreyKind& kind) {
    return std::visit(
        [lambda](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GevreyFunction>) return 2.0 * k.r * std::pow(lambda, 1.0 / k.s);
            else if constexpr (std::is_same_v<K, GevreyInfinity>) return std::pow(lambda, 1.0 / k.s) * std::log1p(lambda);
            else return -2.0 * k.R * std::pow(lambda, 1.0 / k.S);
        },
        kind);
}

// Square root of the weighted square sum, accumulated in log space.
inline GevreyNorm gevrey_norm(const GevreyVector& u, const GevreyKind& kind) {
    u.validate();
    std::visit(
        [](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GevreyFunction>) require(k.s > 0 && k.r > 0, "gevrey_norm: s, r > 0");
            else if constexpr (std::is_same_v<K, GevreyInfinity>) require(k.s > 0, "gevrey_norm: s > 0");
            else require(k.S > 0 && k.R > 0, "gevrey_norm: S, R > 0");
        },
        kind);
    std::vector<double> terms;
    for (const auto& [lam, ui] : u.entries)
        if (ui != 0.0) terms.push_back(2.0 * std::log(std::abs(ui)) + gevrey_log_weight(lam, kind));
    if (terms.empty()) return {-std::numeric_limits<double>::infinity(), 0.0};
    double mx = terms.front();
    for (double t : terms) mx = std::max(mx, t);
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    double log_sq = mx + std::log(s);
    double ln = 0.5 * log_sq;
    return {ln, std::exp(ln)};
}

}  // namespace pathology
