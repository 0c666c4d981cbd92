#pragma once

#include "../errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pathology {

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

// Periodic square [cx - side/2, cx + side/2) x [cy - side/2, cy + side/2) with n x n samples.
struct Grid2D {
    std::size_t n = 64;
    double side = 2.5;
    Vec2 center{};

    void validate() const {
        require(is_power_of_two(n) && n >= 4, "grid size must be a power of two (>= 4), got " + std::to_string(n));
        require(side > 0.0, "grid side must be positive");
    }
    double h() const { return side / static_cast<double>(n); }
    double x(std::size_t j) const { return center.x - 0.5 * side + h() * static_cast<double>(j); }
    double y(std::size_t i) const { return center.y - 0.5 * side + h() * static_cast<double>(i); }
    Vec2 point(std::size_t i, std::size_t j) const { return {x(j), y(i)}; }
    std::size_t size() const { return n * n; }
};

// Row-major samples: values[i * n + j] sits at (x(j), y(i)).
struct ScalarField2D {
    Grid2D grid;
    std::vector<double> values;
    std::optional<double> support_radius;

    ScalarField2D() = default;
    explicit ScalarField2D(Grid2D g) : grid(g), values(g.size(), 0.0) { g.validate(); }

    double& at(std::size_t i, std::size_t j) { return values[i * grid.n + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * grid.n + j]; }

    double integral() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s * grid.h() * grid.h();
    }
    double mean() const { return integral() / (grid.side * grid.side); }
    double l2_norm() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s * grid.h() * grid.h());
    }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

enum class TimeDependence { steady, piecewise };

struct VectorField2D {
    Grid2D grid;
    std::vector<double> ux, uy;
    TimeDependence tag = TimeDependence::steady;

    VectorField2D() = default;
    explicit VectorField2D(Grid2D g) : grid(g), ux(g.size(), 0.0), uy(g.size(), 0.0) { g.validate(); }

    double max_speed() const {
        double m = 0.0;
        for (std::size_t k = 0; k < ux.size(); ++k) m = std::max(m, std::hypot(ux[k], uy[k]));
        return m;
    }
};

// Velocity as a function of (t, x). `breaks` lists instants where it may jump in time
// (piecewise fields); `period` > 0 repeats them.
struct VelocityField {
    std::function<Vec2(double, Vec2)> at;
    TimeDependence tag = TimeDependence::steady;
    double period = 0.0;               // switch pattern repeats with this period (0: none)
    std::vector<double> breaks;        // switch instants within one period
    double support_radius = std::numeric_limits<double>::infinity();
    Vec2 center{};
    // overrides the period/breaks description when set (sums of fields with unrelated switch patterns)
    std::function<std::vector<double>(double, double)> custom_switches;

    VectorField2D sample(double t, const Grid2D& g) const {
        VectorField2D f(g);
        f.tag = tag;
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j) {
                Vec2 v = at(t, g.point(i, j));
                f.ux[i * g.n + j] = v.x;
                f.uy[i * g.n + j] = v.y;
            }
        return f;
    }

    // Switch instants in (a, b).
    std::vector<double> switch_times(double a, double b) const {
        if (custom_switches) return custom_switches(a, b);
        std::vector<double> out;
        if (tag != TimeDependence::piecewise || period <= 0.0) return out;
        const auto k0 = static_cast<long long>(std::floor(a / period));
        for (long long k = k0; static_cast<double>(k) * period < b; ++k)
            for (double s : breaks) {
                double t = static_cast<double>(k) * period + s;
                if (t > a && t < b) out.push_back(t);
            }
        return out;
    }
};

inline VelocityField zero_velocity() {
    VelocityField u;
    u.at = [](double, Vec2) { return Vec2{}; };
    u.support_radius = 0.0;
    return u;
}

inline ScalarField2D sample_scalar(const std::function<double(Vec2)>& f, const Grid2D& g) {
    ScalarField2D s(g);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) s.at(i, j) = f(g.point(i, j));
    return s;
}

// Flat binary snapshot: "PTHL", u32 version, u32 n, f64 side, then n*n f64 row-major, little-endian.
inline constexpr std::uint32_t kSnapshotVersion = 1;

namespace detail {
template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}
template <class T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    is.read(reinterpret_cast<char*>(b), sizeof(T));
    if (!is) throw precondition_error("snapshot: truncated file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}
}  // namespace detail

inline void write_snapshot(const std::string& path, const ScalarField2D& f) {
    std::ofstream os(path, std::ios::binary);
    require(static_cast<bool>(os), "snapshot: cannot open " + path);
    os.write("PTHL", 4);
    detail::put_le<std::uint32_t>(os, kSnapshotVersion);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.n));
    detail::put_le<double>(os, f.grid.side);
    for (double v : f.values) detail::put_le<double>(os, v);
}

inline ScalarField2D read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(static_cast<bool>(is), "snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    require(is && std::memcmp(magic, "PTHL", 4) == 0, "snapshot: bad magic in " + path);
    auto version = detail::get_le<std::uint32_t>(is);
    require(version == kSnapshotVersion, "snapshot: unsupported version");
    Grid2D g;
    g.n = detail::get_le<std::uint32_t>(is);
    g.side = detail::get_le<double>(is);
    ScalarField2D f(g);
    for (auto& v : f.values) v = detail::get_le<double>(is);
    return f;
}

}  // namespace pathology
