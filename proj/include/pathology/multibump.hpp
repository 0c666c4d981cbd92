#pragma once

#include "errors.hpp"
#include "fn1d.hpp"
#include "holder.hpp"
#include "interval_set.hpp"
#include "rational.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pathology {

// Base bump: nonnegative, C1, supported in [-1, 1], unit mass. antideriv(-1) = 0, antideriv(1) = 1.
struct BumpSpec {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> antideriv;
};

// (15/16)(1 - x^2)^2 on (-1, 1).
inline BumpSpec default_bump() {
    BumpSpec b;
    b.eval = [](double x) {
        if (std::abs(x) >= 1.0) return 0.0;
        double q = 1.0 - x * x;
        return 15.0 / 16.0 * q * q;
    };
    b.deriv = [](double x) {
        if (std::abs(x) >= 1.0) return 0.0;
        return -15.0 / 4.0 * x * (1.0 - x * x);
    };
    b.antideriv = [](double x) {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double x3 = x * x * x;
        return 15.0 / 16.0 * (x - 2.0 * x3 / 3.0 + x3 * x * x / 5.0 + 8.0 / 15.0);
    };
    return b;
}

struct BumpConstants {
    double M;      // max phi
    double L;      // max |phi'|
    double H;      // order-alpha Hoelder constant
    double alpha;
};

namespace detail {

// Maximize g on [a, b]: dense scan, then Brent around the best sample.
inline double maximize_1d(const std::function<double(double)>& g, double a, double b, std::size_t samples = 4001) {
    double best_x = a, best = g(a);
    const double h = (b - a) / static_cast<double>(samples - 1);
    for (std::size_t i = 1; i < samples; ++i) {
        double x = a + h * static_cast<double>(i);
        double v = g(x);
        if (v > best) { best = v; best_x = x; }
    }
    auto neg = [&](double x) { return -g(x); };
    auto r = boost::math::tools::brent_find_minima(neg, std::max(a, best_x - h), std::min(b, best_x + h), 52);
    return std::max(best, -r.second);
}

// Local pattern search on the pair ratio |phi(y)-phi(x)|/|y-x|^a starting at a grid witness.
inline double refine_pair_ratio(const std::function<double(double)>& f, double alpha, double x, double y,
                                double step) {
    auto ratio = [&](double u, double v) {
        if (v <= u) return 0.0;
        return std::abs(f(v) - f(u)) / std::pow(v - u, alpha);
    };
    double best = ratio(x, y);
    while (step > 1e-13) {
        bool moved = false;
        const double cand[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
        for (const auto& d : cand) {
            double r = ratio(x + d[0], y + d[1]);
            if (r > best) { best = r; x += d[0]; y += d[1]; moved = true; break; }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

}  // namespace detail

// M, L by maximization of the closed forms; H by the pairwise estimator on [-1, 1]
// followed by a local refinement of the witness pair, so H is close to the true sup.
inline BumpConstants bump_constants(const BumpSpec& b, double alpha, std::size_t holder_points = 2001) {
    require(alpha > 0.0 && alpha <= 1.0, "bump_constants: alpha must lie in (0,1]");
    BumpConstants c{};
    c.alpha = alpha;
    c.M = detail::maximize_1d(b.eval, -1.0, 1.0);
    c.L = detail::maximize_1d([&](double x) { return std::abs(b.deriv(x)); }, -1.0, 1.0);
    auto g = uniform_grid(-1.0, 1.0, holder_points);
    Fn1D f{b.eval, b.deriv, b.antideriv, std::make_pair(-1.0, 1.0)};
    auto est = holder_constant(f, alpha, g);
    c.H = est.constant;
    if (est.witness) {
        double step = 2.0 / static_cast<double>(holder_points - 1);
        c.H = std::max(c.H, detail::refine_pair_ratio(b.eval, alpha, est.witness->first, est.witness->second, step));
    }
    return c;
}

struct MultiBumpParams {
    double alpha = 0.2;
    double beta = 1.5;
    int n = 4;
    int k = 1;
    double H = 1.0;
    // Lambda_n; empty means the minimal admissible choice 2^{(1-alpha) beta n}.
    std::function<double(int)> Lambda;

    double lambda_at(int m) const {
        return Lambda ? Lambda(m) : std::exp2((1.0 - alpha) * beta * m);
    }

    void validate() const {
        require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
        require(beta > 1.0, "beta must exceed 1");
        require(n >= 1, "n must be a positive integer");
        require(k >= 1, "k must be a positive integer");
        require(H > 0.0, "H must be positive");
        require(lambda_at(n) >= std::exp2((1.0 - alpha) * beta * n) * (1.0 - 1e-12),
                "Lambda_n must be at least 2^{(1-alpha) beta n}");
    }

    // The bumps of generation n are separated: beta n >= n + 2.
    void require_separation() const {
        require(beta * n >= n + 2.0 - 1e-12,
                "bump-separation condition beta*n >= n+2 fails (beta=" + std::to_string(beta) +
                    ", n=" + std::to_string(n) + ")");
    }
};

// phi_{n,k}(x) = 2^{-alpha beta n} sum_{|j| <= 2^n k} phi(2^{beta n}(x - j/2^n)),
// with derivative and antiderivative psi_{n,k}(x) = integral from 0 to x.
class MultiBump {
public:
    MultiBump(BumpSpec b, const MultiBumpParams& p) : b_(std::move(b)), p_(p) {
        p_.validate();
        scale_ = std::exp2(p_.beta * p_.n);
        amp_ = std::exp2(-p_.alpha * p_.beta * p_.n);
        mass_ = std::exp2(-(p_.alpha + 1.0) * p_.beta * p_.n);
        pow2n_ = std::exp2(p_.n);
        J_ = static_cast<long long>(std::llround(pow2n_)) * p_.k;
        G0_ = G(0.0);
    }

    double operator()(double x) const {
        double s = 0.0;
        for_each_near(x, [&](double u) { s += b_.eval(u); });
        return amp_ * s;
    }

    double deriv(double x) const {
        double s = 0.0;
        for_each_near(x, [&](double u) { s += b_.deriv(u); });
        return amp_ * scale_ * s;
    }

    double antideriv(double x) const { return mass_ * (G(x) - G0_); }

    // Mass of a single bump: 2^{-(alpha+1) beta n}.
    double bump_mass() const { return mass_; }
    double amplitude() const { return amp_; }
    double scale() const { return scale_; }
    double spacing() const { return 1.0 / pow2n_; }
    long long max_index() const { return J_; }
    const MultiBumpParams& params() const { return p_; }

    Fn1D as_fn() const {
        auto self = std::make_shared<MultiBump>(*this);
        Fn1D f;
        f.eval = [self](double x) { return (*self)(x); };
        f.deriv = [self](double x) { return self->deriv(x); };
        f.antideriv = [self](double x) { return self->antideriv(x); };
        double r = static_cast<double>(J_) / pow2n_ + 1.0 / scale_;
        f.support = std::make_pair(-r, r);
        return f;
    }

private:
    template <class F>
    void for_each_near(double x, F&& f) const {
        const double r = 1.0 / scale_;
        long long lo = static_cast<long long>(std::ceil((x - r) * pow2n_));
        long long hi = static_cast<long long>(std::floor((x + r) * pow2n_));
        lo = std::max(lo, -J_);
        hi = std::min(hi, J_);
        for (long long j = lo; j <= hi; ++j) f(scale_ * (x - static_cast<double>(j) / pow2n_));
    }

    // Sum over |j| <= J of the normalized antiderivative F(scale (x - j/2^n)).
    double G(double x) const {
        const double r = 1.0 / scale_;
        long long full = static_cast<long long>(std::floor((x - r) * pow2n_));
        full = std::clamp(full, -J_ - 1, J_);
        double g = static_cast<double>(full + J_ + 1);
        long long hi = std::min(static_cast<long long>(std::floor((x + r) * pow2n_)), J_);
        for (long long j = std::max(full + 1, -J_); j <= hi; ++j)
            g += b_.antideriv(scale_ * (x - static_cast<double>(j) / pow2n_));
        return g;
    }

    BumpSpec b_;
    MultiBumpParams p_;
    double scale_, amp_, mass_, pow2n_, G0_;
    long long J_;
};

inline Fn1D multibump_fn(const BumpSpec& b, const MultiBumpParams& p) { return MultiBump(b, p).as_fn(); }

struct MultiBumpReport {
    bool support_ok = false;
    bool pointwise_ok = false;
    bool lipschitz_ok = false;
    bool holder_ok = false;
    bool gap_ok = false;

    double sup_phi = 0, sup_phi_bound = 0;
    double sup_psi = 0, sup_psi_bound = 0;
    double max_outside_support = 0;
    double lipschitz_measured = 0, lipschitz_bound = 0;
    double holder_measured = 0, holder_bound = 0;
    double min_gap = 0, gap_bound = 0;
    std::size_t gap_pairs = 0;

    bool all_ok() const { return support_ok && pointwise_ok && lipschitz_ok && holder_ok && gap_ok; }
    std::string first_failure() const {
        if (!support_ok) return "support";
        if (!pointwise_ok) return "pointwise bound";
        if (!lipschitz_ok) return "Lipschitz bound";
        if (!holder_ok) return "Hoelder bound";
        if (!gap_ok) return "gap estimate";
        return "";
    }
};

// Points covering bumps j = 0 and j = 1 at the same relative positions, plus the gap between.
inline std::vector<double> two_bump_grid(const MultiBump& mb, std::size_t per_bump) {
    std::vector<double> g;
    const double r = 1.0 / mb.scale();
    auto rel = uniform_grid(-1.0, 1.0, per_bump);
    for (int j = 0; j < 2; ++j)
        for (double u : rel) g.push_back(static_cast<double>(j) * mb.spacing() + u * r);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// Checks the five multi-bump estimates. `grid` carries the gap-estimate pairs; the other
// checks use their own sampling described next to each block. With enforce_separation = false
// the estimates are measured even when beta n < n + 2, where the lemma promises nothing.
inline MultiBumpReport verify_multibump_lemma(const BumpSpec& b, const MultiBumpParams& p,
                                              std::span<const double> grid,
                                              std::optional<BumpConstants> constants = std::nullopt,
                                              bool enforce_separation = true) {
    p.validate();
    if (enforce_separation) p.require_separation();
    const MultiBump mb(b, p);
    const BumpConstants bc = constants ? *constants : bump_constants(b, p.alpha);
    MultiBumpReport r;
    const double tol = 1e-9;
    const double k = p.k;

    // Support: zero off U_n and for |x| >= k+1, sampled finely.
    {
        DyadicFamilyParams dp{p.alpha, p.beta, k + 2.0};
        auto U = build_Un(dp, p.n);
        auto off = U.complement_in(-(k + 2.0), k + 2.0);
        double worst = 0.0;
        // endpoints of U_n are skipped: there the bump is zero only up to rounding of the radius
        const double edge = 1e-12;
        for (double x : grid_on(off, std::min(1e-3, 0.25 * mb.spacing()))) {
            const auto* part = off.part_containing(x);
            if (part && (x - part->lo < edge || part->hi - x < edge) && std::abs(x) < k + 2.0 - edge) continue;
            worst = std::max(worst, std::abs(mb(x)));
        }
        for (double x : uniform_grid(k + 1.0, k + 3.0, 2001)) {
            worst = std::max(worst, std::abs(mb(x)));
            worst = std::max(worst, std::abs(mb(-x)));
        }
        r.max_outside_support = worst;
        r.support_ok = worst == 0.0;
    }

    // Pointwise: bump centers and a dense sample of [-k-2, k+2].
    {
        r.sup_phi_bound = bc.M * mb.amplitude();
        r.sup_psi_bound = (k + 1.0) * bc.M * mb.amplitude();
        double sphi = 0, spsi = 0;
        for (long long j = -mb.max_index(); j <= mb.max_index(); ++j) sphi = std::max(sphi, std::abs(mb(j * mb.spacing())));
        for (double x : uniform_grid(-k - 2.0, k + 2.0, 10001)) {
            sphi = std::max(sphi, std::abs(mb(x)));
            spsi = std::max(spsi, std::abs(mb.antideriv(x)));
        }
        r.sup_phi = sphi;
        r.sup_psi = spsi;
        r.pointwise_ok = sphi <= r.sup_phi_bound * (1 + tol) && spsi <= r.sup_psi_bound * (1 + tol);
    }

    // Lipschitz and Hoelder: two adjacent bumps at matched relative positions.
    {
        auto g2 = two_bump_grid(mb, 2000);
        Fn1D f = mb.as_fn();
        double lip = holder_constant(f, 1.0, g2).constant;
        lip = std::max(lip, derivative_lipschitz_bound(f, g2));
        r.lipschitz_measured = lip;
        r.lipschitz_bound = std::exp2((1.0 - p.alpha) * p.beta * p.n) * bc.L;
        r.lipschitz_ok = lip <= r.lipschitz_bound * (1 + tol);

        r.holder_measured = holder_constant(f, p.alpha, g2).constant;
        r.holder_bound = bc.H;
        r.holder_ok = r.holder_measured <= r.holder_bound * (1 + tol);
    }

    // Gap: psi is nondecreasing, so for each x the nearest admissible y gives the minimum.
    {
        std::vector<double> xs;
        for (double x : grid)
            if (x >= -k && x <= k) xs.push_back(x);
        std::sort(xs.begin(), xs.end());
        std::vector<double> psi(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) psi[i] = mb.antideriv(xs[i]);
        const double sep = 3.0 / std::exp2(p.n);
        r.gap_bound = mb.bump_mass();
        double mg = std::numeric_limits<double>::infinity();
        std::size_t pairs = 0, j = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            while (j < xs.size() && xs[j] - xs[i] < sep) ++j;
            if (j == xs.size()) break;
            pairs += xs.size() - j;
            mg = std::min(mg, psi[j] - psi[i]);
        }
        r.gap_pairs = pairs;
        r.min_gap = pairs ? mg : 0.0;
        r.gap_ok = pairs > 0 && mg >= r.gap_bound;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Piecewise affine extension across the gaps of K inside [C, D].

struct Extension {
    Fn1D fn;
    IntervalSet gaps;  // closures of the components of [C, D] minus K
    double order, H, L, C, D;
};

inline Extension extend_piecewise_affine(const Fn1D& phi, const IntervalSet& K, double order, double H, double L,
                                         double C, double D) {
    require(C < D, "extend_piecewise_affine: need C < D");
    require(K.contains(C) && K.contains(D), "extend_piecewise_affine: C and D must belong to K");
    auto gaps = K.complement_in(C, D);
    struct Piece {
        double a, b, fa, fb;
    };
    auto pieces = std::make_shared<std::vector<Piece>>();
    for (const auto& g : gaps.parts()) pieces->push_back({g.lo, g.hi, phi(g.lo), phi(g.hi)});
    Fn1D out;
    out.eval = [phi, pieces](double x) {
        auto it = std::upper_bound(pieces->begin(), pieces->end(), x,
                                   [](double v, const Piece& p) { return v < p.a; });
        if (it != pieces->begin()) {
            const Piece& p = *std::prev(it);
            if (x > p.a && x < p.b) return p.fa + (p.fb - p.fa) / (p.b - p.a) * (x - p.a);
        }
        return phi(x);
    };
    return Extension{out, gaps, order, H, L, C, D};
}

struct ExtensionReport {
    bool matches_on_K = false;
    bool holder_ok = false;
    bool lipschitz_ok = false;
    bool sup_ok = false;
    double holder_measured = 0, lipschitz_measured = 0;
    double sup_diff = 0, sup_bound = 0;
    bool all_ok() const { return matches_on_K && holder_ok && lipschitz_ok && sup_ok; }
};

// Samples: K_grid points of K (part endpoints included) plus interior gap points.
inline ExtensionReport verify_extension(const Fn1D& phi, const IntervalSet& K, const Extension& ext,
                                        double grid_step, std::size_t holder_points = 4000) {
    ExtensionReport r;
    auto inK = grid_on(K.clip(ext.C, ext.D), grid_step);
    r.matches_on_K = true;
    for (double x : inK)
        if (ext.fn(x) != phi(x)) r.matches_on_K = false;

    std::vector<double> pts = inK;
    for (double x : grid_on(ext.gaps, grid_step)) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    r.lipschitz_measured = holder_constant(ext.fn, 1.0, pts).constant;
    r.lipschitz_ok = r.lipschitz_measured <= ext.L * (1 + 1e-9);

    const double gap = ext.gaps.measure();
    r.sup_bound = 2.0 * ext.H * std::pow(gap, ext.order);
    for (double x : pts) r.sup_diff = std::max(r.sup_diff, std::abs(ext.fn(x) - phi(x)));
    r.sup_ok = r.sup_diff <= r.sup_bound * (1 + 1e-12);

    // Hoelder on a bounded grid over [C - w, D + w] that keeps all gap endpoints.
    const double w = 0.1 * (ext.D - ext.C);
    std::vector<double> hg = uniform_grid(ext.C - w, ext.D + w, holder_points);
    for (const auto& g : ext.gaps.parts()) {
        hg.push_back(g.lo);
        hg.push_back(g.hi);
    }
    std::sort(hg.begin(), hg.end());
    hg.erase(std::unique(hg.begin(), hg.end(), [](double a, double b) { return b - a < 1e-12; }), hg.end());
    if (hg.size() > kMaxHolderGrid) {
        std::vector<double> thin;
        const std::size_t stride = (hg.size() + kMaxHolderGrid - 1) / kMaxHolderGrid;
        for (std::size_t i = 0; i < hg.size(); i += stride) thin.push_back(hg[i]);
        hg = thin;
    }
    r.holder_measured = holder_constant(ext.fn, ext.order, hg).constant;
    r.holder_ok = r.holder_measured <= ext.H * (1 + 1e-9);
    return r;
}

// ---------------------------------------------------------------------------
// Parameter bookkeeping for the candidate psi = f0 + eps2 psi_{n0,k0}.

struct KohnCandidate {
    Fn1D f0;
    Fn1D psi;
    double eps1 = 0, eps2 = 0, eps0 = 1;
    int n0 = 0, k0 = 1;
    double L0 = 0, H = 1;
    BumpConstants constants{};
    MultiBumpParams params;
    // log2 of the two sides of eps2 2^{-(alpha+1) beta n0} > (k0 + L0) 400 2^{-2 n0}.
    double contradiction_lhs_log2 = 0, contradiction_rhs_log2 = 0;
};

struct NConditions {
    bool window;        // 10 / 2^n < 1 / k0
    bool separation;    // 1 / 2^n > 6 / 2^{beta n}
    bool contradiction; // eps2 2^{-(alpha+1) beta n} > (k0 + L0) 400 2^{-2n}
    bool all() const { return window && separation && contradiction; }
};

// 2^{(beta-1) n} > 6, decided exactly when beta is a small-denominator rational.
inline bool separation_condition(double beta, int n) {
    if (auto fr = small_fraction(beta)) {
        const long long p = fr->num, q = fr->den;
        const long long e = (p - q) * n;
        if (e <= 0) return false;
        BigInt lhs = BigInt(1) << static_cast<unsigned>(e);
        BigInt rhs = boost::multiprecision::pow(BigInt(6), static_cast<unsigned>(q));
        return lhs > rhs;
    }
    return (beta - 1.0) * n > std::log2(6.0);
}

inline NConditions n_conditions(int n, int k0, double L0, double alpha, double beta, double eps2) {
    NConditions c{};
    c.window = BigInt(10) * k0 < (BigInt(1) << static_cast<unsigned>(n));
    c.separation = separation_condition(beta, n);
    c.contradiction = std::log2(eps2) - (alpha + 1.0) * beta * n > std::log2((k0 + L0) * 400.0) - 2.0 * n;
    return c;
}

inline KohnCandidate kohn_build_candidate(const Fn1D& f0, double L0, double H, double eps1, int k0,
                                          const MultiBumpParams& p, double eps0 = 1.0,
                                          const BumpSpec& bump = default_bump()) {
    require(eps1 > 0.0 && eps1 < 1.0, "eps1 must lie in (0,1)");
    require(k0 >= 1, "k0 must be a positive integer");
    require(H > 0.0 && L0 >= 0.0 && eps0 > 0.0, "H, eps0 must be positive and L0 nonnegative");
    require(p.alpha > 0.0 && p.alpha < 1.0 && p.beta > 1.0, "alpha in (0,1) and beta > 1 required");
    if ((p.alpha + 1.0) * p.beta >= 2.0)
        throw construction_impossible("(alpha+1)*beta >= 2: eps2 2^{-(alpha+1) beta n} > 400 (k0+L0) 2^{-2n} "
                                      "fails for every n");
    KohnCandidate c;
    c.f0 = f0;
    c.eps1 = eps1;
    c.eps0 = eps0;
    c.k0 = k0;
    c.L0 = L0;
    c.H = H;
    c.constants = bump_constants(bump, p.alpha);
    const auto& bc = c.constants;
    // Largest admissible eps2 with the strict mass condition met by a factor 2.
    c.eps2 = std::min({eps1 * H / bc.H, eps1 / bc.L, eps0 / (2.0 * (k0 + 2.0) * bc.M)});
    c.eps2 = std::min(c.eps2, 1.0 - 1e-12);

    const int n_limit = 4096;
    int n0 = 0;
    for (int n = 1; n <= n_limit; ++n) {
        MultiBumpParams q = p;
        q.n = n;
        if (q.beta * n < n + 2.0 - 1e-12) continue;
        if (n_conditions(n, k0, L0, p.alpha, p.beta, c.eps2).all()) {
            n0 = n;
            break;
        }
    }
    if (n0 == 0) throw construction_impossible("no n0 <= 4096 satisfies the three n0 conditions");
    c.n0 = n0;
    c.params = p;
    c.params.n = n0;
    c.params.k = k0;
    c.params.H = H;
    c.contradiction_lhs_log2 = std::log2(c.eps2) - (p.alpha + 1.0) * p.beta * n0;
    c.contradiction_rhs_log2 = std::log2((k0 + L0) * 400.0) - 2.0 * n0;

    auto mb = std::make_shared<MultiBump>(bump, c.params);
    const double e2 = c.eps2;
    c.psi.eval = [f0, mb, e2](double x) { return f0(x) + e2 * mb->antideriv(x); };
    if (f0.has_deriv()) c.psi.deriv = [f0, mb, e2](double x) { return f0.deriv(x) + e2 * (*mb)(x); };
    return c;
}

struct MeasureBudget {
    Rational j3_lower;                   // 19 / 2^{n0}, from the 19/10 density
    Rational j2_upper;                   // 18 / 2^{n0}
    std::optional<Rational> j1_upper;    // 6 / 2^{beta n0}, exact when beta n0 is an integer
    double j1_upper_value = 0;
    std::optional<Rational> slack_exact;
    double slack = 0;                    // j3 - j2 - j1
    bool positive = false;               // sign decided exactly
    bool window_ok = false;              // 10 / 2^{n0} < 1 / k0
    Rational density = Rational(19, 10);
};

inline MeasureBudget kohn_measure_budget(int n0, double beta, int k0) {
    require(n0 >= 1 && k0 >= 1 && beta > 1.0, "kohn_measure_budget: n0, k0 >= 1 and beta > 1 required");
    MeasureBudget m;
    const Rational inv = pow2_exact(-n0);
    m.j3_lower = 19 * inv;
    m.j2_upper = 18 * inv;
    m.window_ok = BigInt(10) * k0 < (BigInt(1) << static_cast<unsigned>(n0));
    m.j1_upper_value = 6.0 * std::exp2(-beta * n0);
    if (auto e = as_integer(beta * n0)) {
        m.j1_upper = 6 * pow2_exact(-*e);
        m.slack_exact = m.j3_lower - m.j2_upper - *m.j1_upper;
        m.slack = to_double(*m.slack_exact);
        m.positive = *m.slack_exact > 0;
    } else {
        // 1/2^{n0} > 6/2^{beta n0} is the same as the separation condition.
        m.positive = separation_condition(beta, n0);
        m.slack = std::exp2(-static_cast<double>(n0)) - m.j1_upper_value;
    }
    return m;
}

}  // namespace pathology
