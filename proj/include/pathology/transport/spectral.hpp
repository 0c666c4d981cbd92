#pragma once

#include "../errors.hpp"
#include "field.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace pathology {

// Real-to-complex 2D transform of an n x n field, unnormalized (FFTW convention).
class Spectrum2D {
public:
    explicit Spectrum2D(const ScalarField2D& f) : n_(f.grid.n), side_(f.grid.side) {
        f.grid.validate();
        const int n = static_cast<int>(n_);
        data_.resize(n_ * (n_ / 2 + 1));
        std::vector<double> in(f.values);
        fftw_plan plan = fftw_plan_dft_r2c_2d(n, n, in.data(), reinterpret_cast<fftw_complex*>(data_.data()),
                                              FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    std::size_t n() const { return n_; }
    std::size_t cols() const { return n_ / 2 + 1; }
    std::complex<double>& at(std::size_t i, std::size_t j) { return data_[i * cols() + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return data_[i * cols() + j]; }

    // Integer wavenumbers of entry (i, j); the Nyquist index counts as +n/2.
    long ky_index(std::size_t i) const { return i <= n_ / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n_); }
    long kx_index(std::size_t j) const { return static_cast<long>(j); }
    double dk() const { return 2.0 * std::numbers::pi / side_; }
    // Multiplicity of column j in the full spectrum.
    double column_weight(std::size_t j) const { return (j == 0 || j == n_ / 2) ? 1.0 : 2.0; }

    ScalarField2D inverse(const Grid2D& g) const {
        const int n = static_cast<int>(n_);
        std::vector<std::complex<double>> tmp(data_);
        ScalarField2D out(g);
        fftw_plan plan = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(tmp.data()), out.values.data(),
                                              FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        const double norm = 1.0 / static_cast<double>(n_ * n_);
        for (auto& v : out.values) v *= norm;
        return out;
    }

private:
    std::size_t n_;
    double side_;
    std::vector<std::complex<double>> data_;
};

struct HsNorm {
    double value = 0;
    // Share of the squared norm carried by modes beyond two thirds of the Nyquist index.
    double high_fraction = 0;
};

// ||f||^2 = L^2 sum_k w(k) |f_k|^2 with f_k = (1/L^2) int f e^{-ik.x} the Fourier coefficients,
// k in (2 pi / L) Z^2, w = |k|^{2s} (homogeneous) or (1 + |k|^2)^s.
// With this normalization s = 0 gives the L^2 norm over the box, and cos(k.x) has norm |k|^s L / sqrt 2.
inline HsNorm hs_norm_report(const ScalarField2D& f, double s, bool homogeneous = true) {
    f.grid.validate();
    require(s >= 0.0, "hs_norm: s must be nonnegative");
    const Spectrum2D F(f);
    const std::size_t n = f.grid.n;
    const double dk = F.dk(), L = f.grid.side;
    const double coef_norm = 1.0 / static_cast<double>(n * n);
    const long cut = static_cast<long>(n) / 3;
    double total = 0.0, high = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const long ky = F.ky_index(i);
        for (std::size_t j = 0; j < F.cols(); ++j) {
            const long kx = F.kx_index(j);
            const double k2 = dk * dk * static_cast<double>(kx * kx + ky * ky);
            double w;
            if (homogeneous) w = (k2 == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2, s);
            else w = std::pow(1.0 + k2, s);
            const double c2 = std::norm(F.at(i, j)) * coef_norm * coef_norm;
            const double term = F.column_weight(j) * w * c2;
            total += term;
            if (std::max(std::abs(kx), std::abs(ky)) > cut) high += term;
        }
    }
    HsNorm r;
    r.value = L * std::sqrt(total);
    r.high_fraction = total > 0.0 ? high / total : 0.0;
    return r;
}

inline double hs_norm(const ScalarField2D& f, double s, bool homogeneous = true) {
    return hs_norm_report(f, s, homogeneous).value;
}

// Spectral partial derivatives; the Nyquist mode of the differentiated direction is dropped.
inline ScalarField2D spectral_dx(const ScalarField2D& f) {
    Spectrum2D F(f);
    const std::size_t n = f.grid.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) {
            const double k = (j == n / 2) ? 0.0 : F.dk() * static_cast<double>(F.kx_index(j));
            F.at(i, j) *= std::complex<double>(0.0, k);
        }
    return F.inverse(f.grid);
}

inline ScalarField2D spectral_dy(const ScalarField2D& f) {
    Spectrum2D F(f);
    const std::size_t n = f.grid.n;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = (i == n / 2) ? 0.0 : F.dk() * static_cast<double>(F.ky_index(i));
        for (std::size_t j = 0; j < F.cols(); ++j) F.at(i, j) *= std::complex<double>(0.0, k);
    }
    return F.inverse(f.grid);
}

inline ScalarField2D component(const VectorField2D& u, int which) {
    ScalarField2D f(u.grid);
    f.values = which == 0 ? u.ux : u.uy;
    return f;
}

struct Gradient {
    ScalarField2D dxux, dyux, dxuy, dyuy;
    double frobenius(std::size_t k) const {
        return std::sqrt(dxux.values[k] * dxux.values[k] + dyux.values[k] * dyux.values[k] +
                         dxuy.values[k] * dxuy.values[k] + dyuy.values[k] * dyuy.values[k]);
    }
};

inline Gradient spectral_gradient(const VectorField2D& u) {
    auto ux = component(u, 0), uy = component(u, 1);
    return Gradient{spectral_dx(ux), spectral_dy(ux), spectral_dx(uy), spectral_dy(uy)};
}

// L^p norm over the box of the Frobenius norm of the velocity gradient.
inline double w1p_norm(const VectorField2D& u, double p) {
    require(p >= 1.0 && std::isfinite(p), "w1p_norm: p must lie in [1, inf)");
    const auto G = spectral_gradient(u);
    const double h2 = u.grid.h() * u.grid.h();
    double mx = 0.0;
    for (std::size_t k = 0; k < u.grid.size(); ++k) mx = std::max(mx, G.frobenius(k));
    if (mx == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < u.grid.size(); ++k) s += std::pow(G.frobenius(k) / mx, p);
    return mx * std::pow(s * h2, 1.0 / p);
}

inline ScalarField2D spectral_divergence(const VectorField2D& u) {
    auto d = spectral_dx(component(u, 0));
    auto e = spectral_dy(component(u, 1));
    for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] += e.values[k];
    return d;
}

struct DivergenceReport {
    double max_div = 0;
    double max_grad = 0;
    double ratio() const { return max_grad > 0.0 ? max_div / max_grad : 0.0; }
};

inline DivergenceReport divergence_report(const VectorField2D& u) {
    DivergenceReport r;
    r.max_div = spectral_divergence(u).max_abs();
    const auto G = spectral_gradient(u);
    for (std::size_t k = 0; k < u.grid.size(); ++k) r.max_grad = std::max(r.max_grad, G.frobenius(k));
    return r;
}

}  // namespace pathology
