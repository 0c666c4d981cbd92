#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

namespace pathology {

// Real function of one variable. Derivative and antiderivative are optional.
struct Fn1D {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> antideriv;
    // Closed interval outside of which the function is known to vanish.
    std::optional<std::pair<double, double>> support;

    double operator()(double x) const { return eval(x); }
    bool has_deriv() const { return static_cast<bool>(deriv); }
    bool has_antideriv() const { return static_cast<bool>(antideriv); }
};

inline Fn1D zero_fn() {
    return Fn1D{[](double) { return 0.0; }, [](double) { return 0.0; },
                [](double) { return 0.0; }, std::nullopt};
}

inline Fn1D operator+(const Fn1D& a, const Fn1D& b) {
    Fn1D r;
    r.eval = [a, b](double x) { return a.eval(x) + b.eval(x); };
    if (a.has_deriv() && b.has_deriv())
        r.deriv = [a, b](double x) { return a.deriv(x) + b.deriv(x); };
    if (a.has_antideriv() && b.has_antideriv())
        r.antideriv = [a, b](double x) { return a.antideriv(x) + b.antideriv(x); };
    if (a.support && b.support)
        r.support = std::make_pair(std::min(a.support->first, b.support->first),
                                   std::max(a.support->second, b.support->second));
    return r;
}

}  // namespace pathology
