#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>

namespace pathology {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// 2^e as an exact rational, e of either sign.
inline Rational pow2_exact(long e) {
    BigInt one = 1;
    if (e >= 0) return Rational(BigInt(one << static_cast<unsigned>(e)));
    return Rational(BigInt(1), BigInt(one << static_cast<unsigned>(-e)));
}

// Every finite double is a dyadic rational; this returns it exactly.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Best rational p/q with q <= max_den by continued fractions, if it matches x within rel_tol.
struct SmallFraction {
    std::int64_t num;
    std::int64_t den;
};

inline std::optional<SmallFraction> small_fraction(double x, std::int64_t max_den = 1000,
                                                    double rel_tol = 1e-12) {
    if (!std::isfinite(x)) return std::nullopt;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double approx = static_cast<double>(h1) / static_cast<double>(k1);
        if (std::abs(approx - x) <= rel_tol * std::max(1.0, std::abs(x))) return SmallFraction{h1, k1};
        double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

// Whether a real-valued quantity is (numerically) an integer.
inline std::optional<long> as_integer(double x, double tol = 1e-12) {
    double r = std::round(x);
    if (std::abs(x - r) <= tol * std::max(1.0, std::abs(x))) return static_cast<long>(r);
    return std::nullopt;
}

template <class T>
inline constexpr bool is_exact_v = !std::is_floating_point_v<T>;

// 2^{-x} in the number type T. Exact when T is rational and x is an integer;
// otherwise the correctly rounded binary64 value, carried exactly from then on.
template <class T>
T pow2_neg(double x) {
    if constexpr (is_exact_v<T>) {
        if (auto k = as_integer(x)) return T(pow2_exact(-*k));
        return T(rational_from_double(std::exp2(-x)));
    } else {
        return std::exp2(-x);
    }
}

template <class T>
T from_double(double x) {
    if constexpr (is_exact_v<T>) return T(rational_from_double(x));
    else return x;
}

template <class T>
double as_double(const T& x) {
    if constexpr (is_exact_v<T>) return x.template convert_to<double>();
    else return static_cast<double>(x);
}

}  // namespace pathology
