#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pathology {

template <class T>
struct BasicInterval {
    T lo;
    T hi;

    T length() const { return hi - lo; }
    bool contains(const T& x) const { return lo <= x && x <= hi; }
    friend bool operator==(const BasicInterval&, const BasicInterval&) = default;
};

// Finite union of closed intervals, kept sorted, disjoint and non-touching.
// For floating endpoints, parts closer than merge_tolerance are fused.
template <class T>
class BasicIntervalSet {
public:
    using value_type = T;
    using interval_type = BasicInterval<T>;

    static T merge_tolerance() {
        if constexpr (is_exact_v<T>) return T(0);
        else return T(1e-12);
    }

    BasicIntervalSet() = default;

    explicit BasicIntervalSet(std::vector<interval_type> raw) : parts_(normalize(std::move(raw))) {}

    static BasicIntervalSet single(T lo, T hi) { return BasicIntervalSet({interval_type{lo, hi}}); }

    const std::vector<interval_type>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    T measure() const {
        T m(0);
        for (const auto& p : parts_) m += p.hi - p.lo;
        return m;
    }

    bool contains(const T& x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const T& v, const interval_type& p) { return v < p.lo; });
        if (it == parts_.begin()) return false;
        return std::prev(it)->contains(x);
    }

    // The part containing x, if any.
    const interval_type* part_containing(const T& x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const T& v, const interval_type& p) { return v < p.lo; });
        if (it == parts_.begin()) return nullptr;
        --it;
        return it->contains(x) ? &*it : nullptr;
    }

    BasicIntervalSet unite(const BasicIntervalSet& other) const {
        std::vector<interval_type> all = parts_;
        all.insert(all.end(), other.parts_.begin(), other.parts_.end());
        return BasicIntervalSet(std::move(all));
    }

    BasicIntervalSet intersect(const BasicIntervalSet& other) const {
        std::vector<interval_type> out;
        std::size_t i = 0, j = 0;
        while (i < parts_.size() && j < other.parts_.size()) {
            const auto& a = parts_[i];
            const auto& b = other.parts_[j];
            T lo = a.lo < b.lo ? b.lo : a.lo;
            T hi = a.hi < b.hi ? a.hi : b.hi;
            if (lo <= hi) out.push_back({lo, hi});
            if (a.hi < b.hi) ++i;
            else ++j;
        }
        return BasicIntervalSet(std::move(out));
    }

    // Closure of [lo, hi] minus this set. Zero-length leftovers are dropped.
    BasicIntervalSet complement_in(const T& lo, const T& hi) const {
        std::vector<interval_type> out;
        T cursor = lo;
        for (const auto& p : parts_) {
            if (p.hi < lo) continue;
            if (hi < p.lo) break;
            if (cursor < p.lo) out.push_back({cursor, p.lo});
            if (cursor < p.hi) cursor = p.hi;
        }
        if (cursor < hi) out.push_back({cursor, hi});
        return BasicIntervalSet(std::move(out));
    }

    BasicIntervalSet clip(const T& lo, const T& hi) const { return intersect(single(lo, hi)); }

    template <class U>
    BasicIntervalSet<U> convert() const {
        std::vector<BasicInterval<U>> out;
        out.reserve(parts_.size());
        for (const auto& p : parts_) {
            if constexpr (std::is_floating_point_v<U>) out.push_back({as_double(p.lo), as_double(p.hi)});
            else out.push_back({from_double<U>(as_double(p.lo)), from_double<U>(as_double(p.hi))});
        }
        return BasicIntervalSet<U>(std::move(out));
    }

    friend bool operator==(const BasicIntervalSet& a, const BasicIntervalSet& b) { return a.parts_ == b.parts_; }

private:
    static std::vector<interval_type> normalize(std::vector<interval_type> raw) {
        raw.erase(std::remove_if(raw.begin(), raw.end(), [](const interval_type& p) { return p.hi < p.lo; }),
                  raw.end());
        std::sort(raw.begin(), raw.end(), [](const interval_type& a, const interval_type& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        std::vector<interval_type> out;
        const T tol = merge_tolerance();
        for (auto& p : raw) {
            if (!out.empty() && p.lo <= out.back().hi + tol) {
                if (out.back().hi < p.hi) out.back().hi = p.hi;
            } else {
                out.push_back(p);
            }
        }
        return out;
    }

    std::vector<interval_type> parts_;
};

using Interval = BasicInterval<double>;
using IntervalSet = BasicIntervalSet<double>;
using ExactIntervalSet = BasicIntervalSet<Rational>;

struct DyadicFamilyParams {
    double alpha = 0.2;
    double beta = 1.5;
    double window = 1.0;

    void validate() const {
        require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
        require(beta > 1.0, "beta must exceed 1");
        require(window >= 0.0, "window must be nonnegative");
    }
};

// U_n restricted to [-window, window]: intervals of radius 2^{-beta n} around j/2^n.
template <class T = double>
BasicIntervalSet<T> build_Un(const DyadicFamilyParams& p, int n) {
    require(n >= 1, "build_Un: n must be a positive integer");
    p.validate();
    const T w = from_double<T>(p.window);
    const T r = pow2_neg<T>(p.beta * n);
    const T step = pow2_neg<T>(static_cast<double>(n));
    const auto jmax = static_cast<long long>(std::floor((p.window + as_double(r)) * std::exp2(n))) + 1;
    std::vector<BasicInterval<T>> parts;
    parts.reserve(static_cast<std::size_t>(2 * jmax + 1));
    for (long long j = -jmax; j <= jmax; ++j) {
        T c = T(j) * step;
        T lo = c - r, hi = c + r;
        if (hi < -w || w < lo) continue;
        if (lo < -w) lo = -w;
        if (w < hi) hi = w;
        parts.push_back({lo, hi});
    }
    return BasicIntervalSet<T>(std::move(parts));
}

template <class T>
struct KnResult {
    BasicIntervalSet<T> K;
    T measure;
    // Measure of [-window, window] minus K, i.e. of the truncated union.
    T removed_measure;
    // Sum over i > nmax of (2 window 2^i + 3) 2 2^{-beta i}: what truncation may have missed.
    double tail_bound;
};

inline double kn_tail_bound(const DyadicFamilyParams& p, int nmax) {
    double sum = 0.0;
    for (int i = nmax + 1; i < nmax + 4000; ++i) {
        double term = (2.0 * p.window * std::exp2(i) + 3.0) * 2.0 * std::exp2(-p.beta * i);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Partial sum i = n..nmax of ((b-a) 2^i + 3) 2 2^{-beta i}, using the same radius
// representation as build_Un so that the comparison with the measure is exact in T.
template <class T = double>
T kn_removed_bound(const DyadicFamilyParams& p, int n, int nmax) {
    const T len = from_double<T>(2.0 * p.window);
    T sum(0);
    for (int i = n; i <= nmax; ++i) {
        T pow2i = T(1) / pow2_neg<T>(static_cast<double>(i));
        sum += (len * pow2i + T(3)) * T(2) * pow2_neg<T>(p.beta * i);
    }
    return sum;
}

template <class T = double>
KnResult<T> build_Kn(const DyadicFamilyParams& p, int n, int nmax) {
    require(n >= 1, "build_Kn: n must be a positive integer");
    require(nmax >= n, "build_Kn: nmax must be at least n");
    BasicIntervalSet<T> U;
    for (int i = n; i <= nmax; ++i) U = U.unite(build_Un<T>(p, i));
    const T w = from_double<T>(p.window);
    auto K = U.complement_in(-w, w);
    return KnResult<T>{K, K.measure(), U.clip(-w, w).measure(), kn_tail_bound(p, nmax)};
}

// omega-limit of an eventually periodic sequence given by its finite prefix; the last
// `period` sets repeat forever. The result is the union of one full period.
template <class T>
BasicIntervalSet<T> omega_limit(const std::vector<BasicIntervalSet<T>>& sets, std::size_t period) {
    require(!sets.empty(), "omega_limit: empty sequence");
    require(period >= 1 && period <= sets.size(), "omega_limit: period must be in [1, number of sets]");
    BasicIntervalSet<T> out;
    for (std::size_t i = sets.size() - period; i < sets.size(); ++i) out = out.unite(sets[i]);
    return out;
}

// limsup of the measures of the same eventually periodic sequence.
template <class T>
T limsup_measure(const std::vector<BasicIntervalSet<T>>& sets, std::size_t period) {
    require(!sets.empty() && period >= 1 && period <= sets.size(), "limsup_measure: bad period");
    T best = sets[sets.size() - period].measure();
    for (std::size_t i = sets.size() - period; i < sets.size(); ++i) {
        T m = sets[i].measure();
        if (best < m) best = m;
    }
    return best;
}

}  // namespace pathology
