#pragma once

#include "errors.hpp"
#include "fn1d.hpp"
#include "interval_set.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pathology {

struct HolderEstimate {
    double order = 1.0;
    double constant = 0.0;
    // Grid pair (x, y) attaining the maximal ratio.
    std::optional<std::pair<double, double>> witness;
};

// The pairwise estimator is quadratic in the grid size; larger grids are refused.
inline constexpr std::size_t kMaxHolderGrid = 4096;

namespace detail {

inline void check_grid(std::span<const double> grid) {
    require(grid.size() >= 2, "holder_constant: grid needs at least two points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        require(grid[i] != grid[i - 1], "holder_constant: grid has duplicate points");
        require(grid[i] > grid[i - 1], "holder_constant: grid must be increasing");
    }
}

inline bool is_uniform(std::span<const double> grid) {
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * h) return false;
    return true;
}

// Max adjacent slope; equals the max over all pairs since every chord slope is a
// convex combination of the adjacent ones.
inline HolderEstimate lipschitz_from_values(std::span<const double> x, std::span<const double> v) {
    HolderEstimate est{1.0, 0.0, std::nullopt};
    for (std::size_t i = 1; i < x.size(); ++i) {
        double s = std::abs(v[i] - v[i - 1]) / (x[i] - x[i - 1]);
        if (!est.witness || s > est.constant) {
            est.constant = s;
            est.witness = std::make_pair(x[i - 1], x[i]);
        }
    }
    return est;
}

}  // namespace detail

// Largest |f(y) - f(x)| / |y - x|^order over grid pairs: a lower bound for the true constant.
inline HolderEstimate holder_constant_values(std::span<const double> grid, std::span<const double> vals,
                                             double order) {
    require(order > 0.0 && order <= 1.0, "holder_constant: order must lie in (0,1]");
    detail::check_grid(grid);
    require(vals.size() == grid.size(), "holder_constant: value count differs from grid size");
    if (order == 1.0) return detail::lipschitz_from_values(grid, vals);
    require(grid.size() <= kMaxHolderGrid, "holder_constant: grid larger than 4096 points");

    const std::size_t n = grid.size();
    double best = -1.0;
    std::size_t bi = 0, bj = 1;
    if (detail::is_uniform(grid)) {
        const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
        std::vector<double> inv_pow(n);
        for (std::size_t d = 1; d < n; ++d) inv_pow[d] = std::pow(static_cast<double>(d) * h, -order);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double r = std::abs(vals[j] - vals[i]) * inv_pow[j - i];
                if (r > best) { best = r; bi = i; bj = j; }
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double r = std::abs(vals[j] - vals[i]) / std::pow(grid[j] - grid[i], order);
                if (r > best) { best = r; bi = i; bj = j; }
            }
    }
    // Recompute at the witness with the actual spacing.
    double c = std::abs(vals[bj] - vals[bi]) / std::pow(grid[bj] - grid[bi], order);
    return HolderEstimate{order, c, std::make_pair(grid[bi], grid[bj])};
}

inline HolderEstimate holder_constant(const Fn1D& f, double order, std::span<const double> grid) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    return holder_constant_values(grid, vals, order);
}

inline std::vector<double> uniform_grid(double a, double b, std::size_t npts) {
    require(npts >= 2 && b > a, "uniform_grid: need b > a and at least two points");
    std::vector<double> g(npts);
    for (std::size_t i = 0; i < npts; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(npts - 1);
    g.back() = b;
    return g;
}

// Points of K spaced at most grid_step apart inside each part, endpoints included.
inline std::vector<double> grid_on(const IntervalSet& K, double grid_step) {
    require(grid_step > 0.0, "grid_step must be positive");
    std::vector<double> pts;
    for (const auto& p : K.parts()) {
        auto m = static_cast<std::size_t>(std::ceil((p.hi - p.lo) / grid_step));
        if (m == 0) {
            pts.push_back(p.lo);
            continue;
        }
        for (std::size_t i = 0; i <= m; ++i)
            pts.push_back(i == m ? p.hi : p.lo + (p.hi - p.lo) * static_cast<double>(i) / static_cast<double>(m));
    }
    return pts;
}

// Order-1 constant with both points restricted to K.
inline HolderEstimate restricted_lipschitz(const Fn1D& f, const IntervalSet& K, double grid_step) {
    require(grid_step > 0.0, "restricted_lipschitz: grid_step must be positive");
    if (K.empty()) return HolderEstimate{1.0, 0.0, std::nullopt};
    auto pts = grid_on(K, grid_step);
    if (pts.size() < 2) return HolderEstimate{1.0, 0.0, std::nullopt};
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
    return detail::lipschitz_from_values(pts, vals);
}

// max |f'| over the grid; an upper bound for the Lipschitz constant on piecewise-C1 f
// once the grid resolves the extrema of f'.
inline double derivative_lipschitz_bound(const Fn1D& f, std::span<const double> grid) {
    require(f.has_deriv(), "derivative_lipschitz_bound: function has no derivative");
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(f.deriv(x)));
    return m;
}

// Period-1 sawtooth, equal to |x| on [-1/2, 1/2].
inline double sawtooth(double x) { return std::abs(x - std::round(x)); }

inline Fn1D sawtooth_fn() {
    Fn1D f;
    f.eval = sawtooth;
    f.deriv = [](double x) {
        double y = x - std::round(x);
        return y > 0 ? 1.0 : (y < 0 ? -1.0 : 0.0);
    };
    return f;
}

// Order-1/2 constant of the sawtooth, measured once by the estimator.
inline double sawtooth_holder_constant() {
    static const double value = [] {
        auto g = uniform_grid(0.0, 1.0, 2049);
        return holder_constant(sawtooth_fn(), 0.5, g).constant;
    }();
    return value;
}

// f0 + (H eps1 / H_saw) n^{-1} saw(n^2 x).
inline Fn1D sawtooth_perturb(const Fn1D& f0, int n, double H, double eps1) {
    require(n >= 1, "sawtooth_perturb: n must be positive");
    require(H > 0.0, "sawtooth_perturb: H must be positive");
    require(eps1 > 0.0 && eps1 < 1.0, "sawtooth_perturb: eps1 must lie in (0,1)");
    const double amp = H * eps1 / sawtooth_holder_constant() / n;
    const double n2 = static_cast<double>(n) * n;
    auto saw = sawtooth_fn();
    Fn1D f;
    f.eval = [f0, amp, n2](double x) { return f0(x) + amp * sawtooth(n2 * x); };
    if (f0.has_deriv())
        f.deriv = [f0, amp, n2, saw](double x) { return f0.deriv(x) + amp * n2 * saw.deriv(n2 * x); };
    return f;
}

}  // namespace pathology
