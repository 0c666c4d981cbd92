#include <pathology/transport/advect.hpp>
#include <pathology/transport/field.hpp>
#include <pathology/transport/mixer.hpp>
#include <pathology/transport/rescale.hpp>
#include <pathology/transport/schedule.hpp>
#include <pathology/transport/spectral.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace pathology;

namespace {

constexpr double pi = std::numbers::pi;

double gaussian(Vec2 x, Vec2 c, double s) {
    const double dx = x.x - c.x, dy = x.y - c.y;
    return std::exp(-(dx * dx + dy * dy) / (2 * s * s));
}

// trigonometric polynomial on the box [-L/2, L/2)^2: band-limited on any grid that resolves mode 5
ScalarField2D band_limited(const Grid2D& g) {
    const double k = 2 * pi / g.side;
    return sample_scalar(
        [k](Vec2 x) {
            return std::cos(k * x.x) + 0.5 * std::sin(2 * k * x.y + 0.3) + 0.25 * std::cos(3 * k * x.x - 5 * k * x.y);
        },
        g);
}

VectorField2D band_limited_velocity(const Grid2D& g) {
    const double k = 2 * pi / g.side;
    VectorField2D u(g);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const Vec2 x = g.point(i, j);
            // u = (d_y psi, -d_x psi), psi = sin(k x) sin(2 k y)
            u.ux[i * g.n + j] = 2 * k * std::sin(k * x.x) * std::cos(2 * k * x.y);
            u.uy[i * g.n + j] = -k * std::cos(k * x.x) * std::sin(2 * k * x.y);
        }
    return u;
}

}  // namespace

TEST(HsNorm, SingleModeClosedForm) {
    Grid2D g{64, 2 * pi, {}};
    auto f = sample_scalar([](Vec2 x) { return std::cos(3 * x.x); }, g);
    for (double s : {0.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(hs_norm(f, s), std::pow(3.0, s) * g.side / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(hs_norm(f, 0.0), f.l2_norm(), 1e-12);
    EXPECT_NEAR(hs_norm(f, 1.0, false), std::sqrt(10.0) * g.side / std::sqrt(2.0), 1e-10);
    EXPECT_LE(hs_norm_report(f, 1.0).high_fraction, 1e-20);
    EXPECT_THROW(hs_norm(f, -1.0), precondition_error);
}

TEST(HsNorm, BoxRescaleScalingLawIsExact) {
    Grid2D g{128, 2.5, {}};
    auto f = band_limited(g);
    for (double lam : {0.5, 0.1, 0.013})
        for (double s : {0.5, 1.0, 1.5}) {
            const double gam = 0.37;
            auto r = box_rescale(f, lam, gam, {0.9, -0.2});
            EXPECT_NEAR(hs_norm(r, s) / hs_norm(f, s), gam * std::pow(lam, 1.0 - s), 1e-10 * gam * std::pow(lam, 1.0 - s));
        }
}

TEST(HsNorm, ResampledBlobFollowsTheScalingLaw) {
    // a smooth blob resampled on a fresh grid, not a relabelled box: the H^1 ratio is gamma lambda^0
    auto base = standin_mixer(0.5, 1.0);
    const double h1 = hs_norm(base.theta_sampled(), 1.0);
    const double lam = 0.5, gam = 0.3;
    auto f = sample_scalar(
        [&](Vec2 x) {
            const Vec2 y{x.x / lam, x.y / lam};
            return std::hypot(y.x, y.y) > 1 ? 0.0 : gam * base.theta(y);
        },
        base.grid);
    EXPECT_NEAR(hs_norm(f, 1.0) / (gam * h1), 1.0, 1e-6);
}

TEST(W1p, ChangeOfVariablesLaw) {
    Grid2D g{128, 2.5, {}};
    auto u = band_limited_velocity(g);
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
        const double lam = 0.05, n = 7;
        auto v = box_rescale(u, lam, n, {0.3, 0.4});
        EXPECT_NEAR(w1p_norm(v, p) / w1p_norm(u, p), n * std::pow(lam, 2.0 / p), 1e-10 * n * std::pow(lam, 2.0 / p));
    }
}

TEST(W1p, ParsevalAtPEqualsTwo) {
    Grid2D g{64, 2.5, {}};
    auto u = band_limited_velocity(g);
    const double a = hs_norm(component(u, 0), 1.0), b = hs_norm(component(u, 1), 1.0);
    EXPECT_NEAR(w1p_norm(u, 2.0), std::sqrt(a * a + b * b), 1e-8 * std::sqrt(a * a + b * b));
    EXPECT_LE(divergence_report(u).ratio(), 1e-12);
}

TEST(W1p, ZeroField) {
    Grid2D g{32, 2.5, {}};
    VectorField2D u(g);
    EXPECT_EQ(w1p_norm(u, 3.0), 0.0);
    EXPECT_EQ(divergence_report(u).ratio(), 0.0);
    EXPECT_EQ(hs_norm(ScalarField2D(g), 1.0), 0.0);
    EXPECT_THROW(w1p_norm(u, 0.5), precondition_error);
}

TEST(Grid, RejectsNonPowerOfTwo) {
    EXPECT_THROW(ScalarField2D(Grid2D{100, 2.5, {}}), precondition_error);
    EXPECT_THROW(ScalarField2D(Grid2D{64, 0.0, {}}), precondition_error);
}

TEST(Advect, ZeroVelocityIsTheIdentity) {
    Grid2D g{64, 2.5, {}};
    auto theta = sample_scalar([](Vec2 x) { return gaussian(x, {0.2, -0.1}, 0.2); }, g);
    auto tr = advect(zero_velocity(), theta, 1.0, 0.1);
    EXPECT_EQ(tr.final().values, theta.values);
    EXPECT_EQ(tr.steps, 10u);
}

TEST(Advect, RigidRotationRoundTrip) {
    Grid2D g{128, 2.5, {}};
    auto theta = sample_scalar([](Vec2 x) { return gaussian(x, {0.5, 0.0}, 0.15); }, g);
    const double corner = std::hypot(1.25, 1.25);
    const double dt = 2 * g.h() / corner * 0.999;
    auto tr = advect(rotation_velocity(), theta, 2 * pi, dt);
    const auto& r = tr.final();
    double err = 0;
    for (std::size_t k = 0; k < r.values.size(); ++k) err += (r.values[k] - theta.values[k]) * (r.values[k] - theta.values[k]);
    err = std::sqrt(err * g.h() * g.h()) / theta.l2_norm();
    EXPECT_LE(err, 1e-2);
    EXPECT_NEAR(r.mean(), theta.mean(), 1e-12);
    // cubic overshoot stays within one percent
    EXPECT_LE(r.max_abs(), 1.01 * theta.max_abs());
}

TEST(Advect, QuarterTurnMovesTheBlob) {
    Grid2D g{64, 2.5, {}};
    auto theta = sample_scalar([](Vec2 x) { return gaussian(x, {0.5, 0.0}, 0.2); }, g);
    AdvectOptions opt;
    opt.snapshot_times = {pi / 2};
    auto tr = advect(rotation_velocity(), theta, pi, 0.02, opt);
    ASSERT_EQ(tr.times.size(), 3u);
    const auto& q = tr.at(pi / 2);
    // the blob centre sits at (0, 0.5) after a quarter turn
    const std::size_t j = 32, i = 32 + 13;  // x = 0, y ~ 0.5
    EXPECT_GT(q.at(i, j), 0.8);
    // and has left (0.5, 0)
    EXPECT_LT(q.at(32, 32 + 13), 0.05);
    EXPECT_THROW(tr.at(0.3), precondition_error);
}

TEST(Advect, StepBoundIsEnforced) {
    Grid2D g{64, 2.5, {}};
    auto theta = sample_scalar([](Vec2 x) { return gaussian(x, {}, 0.2); }, g);
    EXPECT_THROW(advect(rotation_velocity(10.0), theta, 1.0, 0.1), precondition_error);
    EXPECT_THROW(advect(rotation_velocity(), theta, 1.0, 0.0), precondition_error);
    EXPECT_THROW(advect(rotation_velocity(), theta, -1.0, 0.1), precondition_error);
    AdvectOptions loose;
    loose.safety = 100.0;
    EXPECT_NO_THROW(advect(rotation_velocity(10.0), theta, 0.1, 0.1, loose));
}

TEST(Advect, StepsStopAtSwitchTimes) {
    auto u = shear_velocity(0.1, 0.3, 0.625);
    Grid2D g{32, 2.5, {}};
    auto theta = sample_scalar([](Vec2 x) { return gaussian(x, {}, 0.3); }, g);
    auto tr = advect(u, theta, 1.0, 0.25);
    // segments [0,.3] [.3,.6] [.6,.9] [.9,1] need 2 + 2 + 2 + 1 steps
    EXPECT_EQ(tr.steps, 7u);
    EXPECT_EQ(u.switch_times(0.0, 1.0), (std::vector<double>{0.3, 0.6, 0.8999999999999999}));
}

TEST(Advect, DisjointPatchesEvolveIndependently) {
    auto base = standin_mixer(0.5, 1.0);
    auto sched = default_schedule(200);
    Grid2D g{256, 2.5, {}};
    auto rt = rescale_triple(base, sched, 4, {0.95, 0.0}, g);
    auto u0 = rescale_velocity(base.velocity, 0.5, 1.0, {});
    auto th0 = sample_scalar(
        [&](Vec2 x) {
            const Vec2 y{x.x / 0.5, x.y / 0.5};
            return std::hypot(y.x, y.y) > 1 ? 0.0 : base.theta(y);
        },
        g);
    ScalarField2D both = th0;
    for (std::size_t k = 0; k < both.values.size(); ++k) both.values[k] += rt.theta_sampled.values[k];
    // without the global mass fixer the scheme is linear and local
    AdvectOptions opt;
    opt.mass_fix = false;
    const double dt = 0.004, T = 0.25;
    auto a = advect(sum_velocity(u0, rt.velocity), both, T, dt, opt).final();
    auto b = advect(u0, th0, T, dt, opt).final();
    auto c = advect(rt.velocity, rt.theta_sampled, T, dt, opt).final();
    double err = 0;
    for (std::size_t k = 0; k < a.values.size(); ++k) err = std::max(err, std::abs(a.values[k] - b.values[k] - c.values[k]));
    EXPECT_LE(err, 1e-6);
}

TEST(Advect, MassFixerKeepsTheMean) {
    auto base = standin_mixer(0.5, 1.0);
    auto theta = base.theta_sampled();
    auto tr = advect(base.velocity, theta, 0.5, 0.039);
    EXPECT_NEAR(tr.final().mean(), theta.mean(), 1e-12);
    AdvectOptions off;
    off.mass_fix = false;
    auto raw = advect(base.velocity, theta, 0.5, 0.039, off);
    EXPECT_GT(std::abs(raw.final().mean() - theta.mean()), 0.0);
}

TEST(Snapshot, RoundTrip) {
    Grid2D g{16, 3.5, {}};
    auto f = sample_scalar([](Vec2 x) { return std::sin(x.x) * std::cos(3 * x.y) - 1e-300; }, g);
    const auto path = (std::filesystem::temp_directory_path() / "pathology_snapshot_test.bin").string();
    write_snapshot(path, f);
    EXPECT_EQ(std::filesystem::file_size(path), 4u + 4 + 4 + 8 + 16 * 16 * 8);
    auto r = read_snapshot(path);
    EXPECT_EQ(r.grid.n, 16u);
    EXPECT_EQ(r.grid.side, 3.5);
    EXPECT_EQ(r.values, f.values);
    {
        std::ofstream bad(path, std::ios::binary);
        bad << "NOPE";
    }
    EXPECT_THROW(read_snapshot(path), precondition_error);
    std::filesystem::remove(path);
}

TEST(Schedule, DefaultValues) {
    auto s = default_schedule();
    EXPECT_NEAR(s.lambda(1), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(s.gamma(1), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(100 * s.lambda(100), 100 * std::exp(-10.0), 1e-15);
    EXPECT_NEAR(100 * s.lambda(100), 4.54e-3, 1e-5);
    for (long n = 5; n < 400; ++n) EXPECT_LT((n + 1) * s.lambda(n + 1), n * s.lambda(n)) << n;
    // maximum of n^2 lambda_n^{2/p} / p^4 sits at n = 4, p = 1: 16 e^{-4}
    EXPECT_NEAR(s.ell_d, 16 * std::exp(-4.0), 1e-12);
    EXPECT_EQ(s.ell_argmax_n, 4);
    EXPECT_EQ(s.ell_argmax_p, 1.0);
}

TEST(Schedule, ChecksPassAndEllIsStable) {
    auto s = default_schedule(1000);
    auto c = schedule_checks(s, 400, {0.5, 1.0, 2.0}, 1000);
    EXPECT_TRUE(c.all_ok()) << c.first_failure();
    EXPECT_LE(c.worst_ell_ratio, 1.0 + 1e-12);
    auto fine = default_schedule(2000);
    EXPECT_NEAR(fine.ell_d / s.ell_d, 1.0, 0.02);
}

TEST(Schedule, BadScheduleIsFlagged) {
    RescaleSchedule s = default_schedule(100);
    // gamma_n = 1 never beats lambda_n^a: gamma_n / lambda_n^a -> inf
    s.log_gamma = [](long) { return 0.0; };
    auto c = schedule_checks(s, 200, {1.0}, 100);
    EXPECT_FALSE(c.all_ok());
    EXPECT_EQ(c.first_failure(), "gamma_n/lambda_n^1.000000 -> 0");
}

TEST(Budget, CrossingMatchesClosedForm) {
    auto s = default_schedule(100);
    std::vector<long> ns;
    for (long n = 1; n <= 60; ++n) ns.push_back(n);
    auto t = blowup_budget(s, 1, 0.0, 1.0, 1.0, ns);
    ASSERT_TRUE(t.crossing);
    auto cf = closed_form_crossing(1, 0.0, 1.0, 1.0);
    EXPECT_NEAR(cf.root, 5.404, 1e-3);
    EXPECT_EQ(cf.index, 6);
    EXPECT_LE(std::abs(*t.crossing - cf.index), 1);
    // beyond the crossing the bound keeps growing
    for (std::size_t i = static_cast<std::size_t>(*t.crossing); i < t.rows.size(); ++i)
        EXPECT_GT(t.rows[i].log_bound_term, t.rows[i - 1].log_bound_term);
}

TEST(Budget, DoublingGammaZeroShiftsCrossingBoundedly) {
    auto s = default_schedule(100);
    std::vector<long> ns;
    for (long n = 1; n <= 400; ++n) ns.push_back(n);
    auto first = blowup_budget(s, 2, 1.0, 1.0, 1.0, ns);
    ASSERT_TRUE(first.crossing);
    long prev = *first.crossing;
    for (double G : {2.0, 4.0, 8.0, 16.0}) {
        auto t = blowup_budget(s, 2, G, 1.0, 1.0, ns);
        ASSERT_TRUE(t.crossing) << G;
        long cur = *t.crossing;
        EXPECT_GE(cur, prev);
        // log 2 extra in the exponent costs at most log 2 / (c/k0^2 - derivative of the decay) more steps
        EXPECT_LE(cur - prev, 10);
        EXPECT_LE(std::abs(cur - closed_form_crossing(2, G, 1.0, 1.0).index), 1);
        prev = cur;
    }
    EXPECT_THROW(blowup_budget(s, 0, 0.0, 1.0, 1.0, ns), precondition_error);
}

TEST(Rescale, PlacementAndResolutionErrors) {
    auto base = standin_mixer(0.5, 1.0);
    auto s = default_schedule(100);
    Grid2D g{256, 2.5, {}};
    EXPECT_THROW(rescale_triple(base, s, 4, {0.5, 0.0}, g), precondition_error);
    try {
        rescale_triple(base, s, 1, {0.95, 0.0}, Grid2D{256, 2.0, {}});
        FAIL() << "expected overflow";
    } catch (const precondition_error& e) {
        EXPECT_NE(std::string(e.what()).find("required box side >="), std::string::npos) << e.what();
    }
    try {
        rescale_triple(base, s, 20, {0.95, 0.0}, Grid2D{128, 2.5, {}});
        FAIL() << "expected under-resolution";
    } catch (const precondition_error& e) {
        EXPECT_NE(std::string(e.what()).find("required grid >="), std::string::npos) << e.what();
    }
}

TEST(Rescale, UniformBoundAndPredictedSolution) {
    auto base = standin_mixer(0.5, 1.0);
    auto s = default_schedule(100);
    Grid2D g{256, 2.5, {}};
    auto rt = rescale_triple(base, s, 4, {0.95, 0.0}, g);
    EXPECT_NEAR(rt.lambda, std::exp(-2.0), 1e-15);
    for (double t : {0.1, 0.3}) {
        auto f = rt.velocity.sample(t, g);
        EXPECT_LE(f.max_speed(), rt.sup_u_bound * (1 + 1e-12));
    }
    // theta_n agrees with the predicted solution at t = 0
    const auto th = base.theta_sampled();
    double worst = 0;
    for (std::size_t i = 0; i < g.n; i += 3)
        for (std::size_t j = 0; j < g.n; j += 3)
            worst = std::max(worst, std::abs(rt.predicted_rho(th, g.point(i, j)) - rt.theta_sampled.at(i, j)));
    EXPECT_LE(worst, 1e-3 * rt.gamma);
    // switch times are compressed by n: every 1/4
    EXPECT_EQ(rt.velocity.switch_times(0.0, 1.0), (std::vector<double>{0.25, 0.5, 0.75}));
}

TEST(Rescale, DisjointSupportIndex) {
    auto s = default_schedule(100);
    auto n = first_disjoint_n(s, 1.0, {0.95, 0.0}, 0.5);
    ASSERT_TRUE(n);
    // need exp(-sqrt n) < 0.45: sqrt n > 0.7985, n = 1 already works
    EXPECT_EQ(*n, 1);
    auto m = first_disjoint_n(s, 1.0, {0.95, 0.0}, 0.9);
    // exp(-sqrt n) < 0.05: sqrt n > 2.9957, n >= 9
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, 9);
    EXPECT_FALSE(first_disjoint_n(s, 1.0, {0.95, 0.0}, 0.96, 400));
}

TEST(Rescale, ComposedBudget) {
    const double ell = 16 * std::exp(-4.0);
    EXPECT_NEAR(composed_budget_lhs(0.1, 8.0, ell, 1.0, 10, 1.0), 0.9 + 8 * ell * pi / 10, 1e-14);
    EXPECT_FALSE(composed_admissible(0.1, 8.0, ell, 1.0, 10, {1, 2, 4}));
    EXPECT_TRUE(composed_admissible(0.1, 8.0, ell, 1.0, 100, {1, 2, 4}));
    EXPECT_NEAR(rescaled_sobolev_bound(2.0, 1.0, 3, 0.1, 2.0), 2 * 3 * std::sqrt(pi * 0.01), 1e-14);
}

TEST(Admissibility, ZeroFieldPassesAndLargeAmplitudeFails) {
    Grid2D g{64, 2.5, {}};
    auto z = check_admissible(zero_velocity(), g, {0.0});
    EXPECT_TRUE(z.all_ok()) << z.first_failure();
    MixerOptions o;
    o.grid = Grid2D{128, 2.5, {}};
    auto big = standin_mixer(1.5, 1.0, o);
    auto r = check_admissible(big.velocity, o.grid, {0.25, 1.25}, p4_budget, {1, 2, 4}, 1e-3);
    EXPECT_FALSE(r.sup_ok);
    EXPECT_EQ(r.first_failure(), "sup norm <= 1");
    EXPECT_TRUE(r.support_ok);
}

TEST(Mixer, DivergenceFreeAndSupported) {
    for (std::size_t n : {256u, 512u}) {
        MixerOptions o;
        o.grid.n = n;
        auto b = standin_mixer(0.5, 1.0, o);
        EXPECT_LE(divergence_report(b.velocity.sample(0.25, b.grid)).ratio(), 1e-3) << n;
    }
    // raw shear on a box of whole periods is spectrally divergence-free
    Grid2D g{128, 2.5, {}};
    auto raw = shear_velocity(0.5, 1.0, 0.625);
    EXPECT_LE(divergence_report(raw.sample(0.25, g)).ratio(), 1e-10);
    EXPECT_LE(divergence_report(raw.sample(1.25, g)).ratio(), 1e-10);
    auto b = standin_mixer(0.5, 1.0);
    EXPECT_EQ(b.velocity.at(0.3, {0.8, 0.7}).norm(), 0.0);
    EXPECT_NEAR(b.M_u, 0.5, 1e-3);
    EXPECT_NEAR(b.M_theta, 1.0, 1e-3);
    EXPECT_THROW(standin_mixer(-1.0, 1.0), precondition_error);
    EXPECT_THROW(standin_mixer(0.5, 0.0), precondition_error);
}

TEST(Mixer, SmoothStep) {
    EXPECT_EQ(smooth_step(-1.0), 0.0);
    EXPECT_EQ(smooth_step(2.0), 1.0);
    EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
    const double h = 1e-6;
    for (double x : {0.1, 0.4, 0.8})
        EXPECT_NEAR((smooth_step(x + h) - smooth_step(x - h)) / (2 * h), smooth_step_deriv(x), 1e-7);
}

TEST(Mixer, NormGrowsAndL2IsKept) {
    auto b = standin_mixer(0.5, 1.0);
    auto d = mixing_diagnostics(b, 1.0, 0.039, 5);
    EXPECT_GT(d.slope, 0.0);
    EXPECT_GT(d.slope_lo, 0.0);
    EXPECT_LE(d.slope_lo, d.slope);
    EXPECT_GE(d.slope_hi, d.slope);
    EXPECT_LE(d.l2_drift, 5e-3);
    EXPECT_LE(d.mean_drift, 1e-12);
    EXPECT_GT(d.h1.back(), d.h1.front());
}

TEST(Mixer, ZeroAmplitudeHasNoGrowth) {
    auto b = standin_mixer(0.0, 1.0);
    auto d = mixing_diagnostics(b, 1.0, 0.1, 5);
    EXPECT_EQ(d.slope, 0.0);
    for (double h : d.h1) EXPECT_EQ(h, d.h1.front());
}
