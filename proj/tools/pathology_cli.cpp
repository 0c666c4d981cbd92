// pathology_cli: runs the constructions and their checks, writes CSV with a '#' header.
//
//   pathology_cli bump      [--config f] [--csv path|-] [--set k=v]... [--sweep k=a..b] [--tol x] [--seed s]
//   pathology_cli wave      ...
//   pathology_cli transport ...
//   pathology_cli exercise  ...
//
// Exit codes: 0 all checks hold, 2 bad config or violated precondition, 3 a check failed,
// 4 numerical failure (integrator gave up).

#include "run_config.hpp"

#include <pathology/pathology.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pathology;
using pathology::cli::config_error;
using pathology::cli::RunConfig;

namespace {

constexpr const char* kVersion = "0.3.0";

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(long v) { return std::to_string(v); }
std::string num(bool v) { return v ? "1" : "0"; }

template <class... T>
std::string row(const T&... cells) {
    std::string out;
    ((out += (out.empty() ? "" : ",") + num(cells)), ...);
    return out;
}

struct Table {
    std::vector<std::string> columns;
    std::string units;
    std::vector<std::string> rows;
    std::vector<std::string> notes;  // go to the header and to stderr
    std::string first_failure;       // empty when every check held

    void fail(const std::string& what) {
        if (first_failure.empty()) first_failure = what;
    }
};

void declare_all(RunConfig& c) {
    c.declare("run.seed", "20240531", "seed for every random draw");

    c.declare("bump.alpha", "0.2", "Hoelder order alpha in (0,1)");
    c.declare("bump.beta", "1.5", "bump width exponent beta > 1");
    c.declare("bump.n_min", "4", "first generation n");
    c.declare("bump.n_max", "6", "last generation n");
    c.declare("bump.k_max", "2", "window half-width k runs over 1..k_max");
    c.declare("bump.H", "1", "amplitude constant H");
    c.declare("bump.grid_points", "2001", "points of the uniform grid on [-k, k]");
    c.declare("bump.tol", "1e-9", "relative slack allowed on every bound");
    c.declare("kohn.alpha", "0.2", "alpha of the candidate");
    c.declare("kohn.beta", "1.5", "beta of the candidate");
    c.declare("kohn.eps1", "0.5", "eps1 in (0,1)");
    c.declare("kohn.k0", "1", "window index k0");
    c.declare("kohn.H", "1", "Hoelder constant of f0");
    c.declare("kohn.L0", "0", "Lipschitz constant of f0 (f0 = 0)");

    c.declare("wave.alpha", "0.5", "Hoelder order of the speed");
    c.declare("wave.beta", "4", "Gevrey index of the data space");
    c.declare("wave.B", "4", "ultradistribution index of the target space");
    c.declare("wave.mu1", "0.5", "lower bound of the speed");
    c.declare("wave.mu2", "50", "upper bound of the speed");
    c.declare("wave.H", "670", "Hoelder budget H");
    c.declare("wave.eps1", "0.5", "share eps1 of H spent on the speed");
    c.declare("wave.delta", "0.9424777960769379", "growth window length (0.3 pi)");
    c.declare("wave.k0", "1", "window index k0");
    c.declare("wave.m", "5", "background speed is m^2");
    c.declare("wave.lambda0", "16", "lambda_n = lambda0 2^{n-1}");
    c.declare("wave.n_min", "1", "first mode index");
    c.declare("wave.n_max", "8", "last mode index");
    c.declare("wave.samples", "21", "output times per mode on [0, k0]");
    c.declare("wave.tol", "1e-10", "integrator tolerance");
    c.declare("wave.random_speeds", "8", "random Lipschitz speeds for the energy sandwich");

    c.declare("transport.grid", "256", "grid points per side (power of two)");
    c.declare("transport.side", "2.5", "box side");
    c.declare("transport.amplitude", "0.5", "shear amplitude of the stand-in mixer");
    c.declare("transport.switch_period", "1", "time between shear switches of the stand-in mixer");
    c.declare("transport.k0", "1", "regularity index: Sobolev order s = 1/k0");
    c.declare("transport.Gamma0", "0", "norm of the background solution");
    c.declare("transport.C", "1", "constant C of the mixing lower bound");
    c.declare("transport.c", "1", "rate c of the mixing lower bound");
    c.declare("transport.eps1", "0.1", "budget share left for the rescaled fields");
    c.declare("transport.x0", "0.95", "placement |x0| (on the x axis)");
    c.declare("transport.probe_n", "4", "n of the rescaled triple built on the grid");
    c.declare("transport.t", "0.05", "last time of the norm columns (times 0, t/2, t)");
    c.declare("transport.dt", "0.039", "time step of the base evolution");
    c.declare("transport.div_tol", "1e-3", "allowed divergence ratio of the stand-in mixer");
    c.declare("transport.n_min", "1", "first row n");
    c.declare("transport.n_max", "64", "last row n");
    c.declare("transport.tol", "1e-6", "relative error allowed on the scaling laws");
    c.declare("transport.snapshot", "", "if set, write the probe's rescaled datum as a binary snapshot");

    c.declare("exercise.H", "1", "order-1/2 budget H");
    c.declare("exercise.eps1", "0.5", "share eps1 of H");
    c.declare("exercise.n_min", "1", "first n");
    c.declare("exercise.n_max", "16", "last n");
    c.declare("exercise.grid_points", "2001", "points per estimate");
    c.declare("exercise.tol", "1e-9", "relative slack on the Hoelder budget");
}

// ---------------------------------------------------------------- bump

Table cmd_bump(const RunConfig& c) {
    Table t;
    t.columns = {"check", "n", "k", "measured", "bound", "ok"};
    t.units = "check name, generation, window, measured value, bound, 1 if measured <= bound";
    const double tol = c.real("bump.tol");
    auto add = [&](const std::string& name, long n, long k, double measured, double bound, bool ok) {
        t.rows.push_back(name + "," + row(n, k, measured, bound, ok));
        if (!ok) t.fail(name + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    };

    MultiBumpParams p;
    p.alpha = c.real("bump.alpha");
    p.beta = c.real("bump.beta");
    p.H = c.real("bump.H");
    const auto bump = default_bump();
    p.validate();
    const auto bc = bump_constants(bump, p.alpha);
    t.notes.push_back("bump constants: M = " + num(bc.M) + ", L = " + num(bc.L) + ", H_alpha = " + num(bc.H));
    const long kmax = c.integer("bump.k_max");
    require(kmax >= 1, "bump.k_max must be positive");
    const auto points = static_cast<std::size_t>(c.integer("bump.grid_points"));
    for (long n = c.integer("bump.n_min"); n <= c.integer("bump.n_max"); ++n)
        for (long k = 1; k <= kmax; ++k) {
            p.n = static_cast<int>(n);
            p.k = static_cast<int>(k);
            p.require_separation();
            auto r = verify_multibump_lemma(bump, p, uniform_grid(-static_cast<double>(k), static_cast<double>(k), points), bc);
            const double slack = 1.0 + tol;
            add("support", n, k, r.max_outside_support, 0.0, r.support_ok);
            add("sup_phi", n, k, r.sup_phi, r.sup_phi_bound, r.sup_phi <= r.sup_phi_bound * slack);
            add("sup_psi", n, k, r.sup_psi, r.sup_psi_bound, r.sup_psi <= r.sup_psi_bound * slack);
            add("lipschitz", n, k, r.lipschitz_measured, r.lipschitz_bound, r.lipschitz_ok);
            add("hoelder", n, k, r.holder_measured, r.holder_bound, r.holder_ok);
            add("gap", n, k, r.min_gap, r.gap_bound, r.gap_ok);
        }

    MultiBumpParams q;
    q.alpha = c.real("kohn.alpha");
    q.beta = c.real("kohn.beta");
    const int k0 = static_cast<int>(c.integer("kohn.k0"));
    auto cand = kohn_build_candidate(zero_fn(), c.real("kohn.L0"), c.real("kohn.H"), c.real("kohn.eps1"), k0, q);
    const auto& kb = cand.constants;
    const long n0 = cand.n0;
    add("kohn_eps2_hoelder", n0, k0, cand.eps2 * kb.H, cand.eps1 * cand.H, cand.eps2 * kb.H <= cand.eps1 * cand.H * (1 + tol));
    add("kohn_eps2_lipschitz", n0, k0, cand.eps2 * kb.L, cand.eps1, cand.eps2 * kb.L <= cand.eps1 * (1 + tol));
    add("kohn_eps2_mass", n0, k0, 2.0 * (k0 + 2.0) * kb.M * cand.eps2, cand.eps0,
        2.0 * (k0 + 2.0) * kb.M * cand.eps2 <= cand.eps0 * (1 + tol));
    const auto cond = n_conditions(cand.n0, k0, cand.L0, q.alpha, q.beta, cand.eps2);
    add("kohn_window", n0, k0, 10.0 * std::exp2(-cand.n0), 1.0 / k0, cond.window);
    add("kohn_separation", n0, k0, 6.0 * std::exp2(-q.beta * cand.n0), std::exp2(-cand.n0), cond.separation);
    // log2 sides, measured = right side, bound = left side
    add("kohn_contradiction_log2", n0, k0, cand.contradiction_rhs_log2, cand.contradiction_lhs_log2, cond.contradiction);
    const auto mb = kohn_measure_budget(cand.n0, q.beta, k0);
    add("kohn_measure_slack", n0, k0, -mb.slack, 0.0, mb.positive);
    t.notes.push_back("kohn candidate: n0 = " + std::to_string(cand.n0) + ", eps2 = " + num(cand.eps2) +
                      ", measure slack = " + num(mb.slack) + (mb.slack_exact ? " (exact)" : " (floating)"));
    return t;
}

// ---------------------------------------------------------------- wave

BlowupConfig wave_config(const RunConfig& c) {
    BlowupConfig b;
    b.alpha = c.real("wave.alpha");
    b.beta = c.real("wave.beta");
    b.B = c.real("wave.B");
    b.mu1 = c.real("wave.mu1");
    b.mu2 = c.real("wave.mu2");
    b.H = c.real("wave.H");
    b.eps1 = c.real("wave.eps1");
    b.delta = c.real("wave.delta");
    b.k0 = static_cast<int>(c.integer("wave.k0"));
    b.m = c.real("wave.m");
    b.tol = c.real("wave.tol");
    b.samples = static_cast<std::size_t>(c.integer("wave.samples"));
    const long lo = c.integer("wave.n_min"), hi = c.integer("wave.n_max");
    require(lo >= 1 && hi >= lo, "wave.n_min..wave.n_max must be a nonempty range of positive indices");
    b.lambdas.clear();
    for (long n = lo; n <= hi; ++n) b.lambdas.push_back(c.real("wave.lambda0") * std::exp2(static_cast<double>(n - 1)));
    return b;
}

Table cmd_wave(const RunConfig& c) {
    Table t;
    t.columns = {"lambda_n", "eps_n", "delta_n", "t", "v", "vprime", "log_E", "log_ultra_norm_lb", "predicted_exponent"};
    t.units = "dimensionless; log columns are natural logs";
    auto cfg = wave_config(c);
    cfg.validate();

    // basic ingredient
    double ode = 0;
    for (double eps : {0.01, 0.05, 0.1, 0.2}) ode = std::max(ode, verify_ode_identity(BasicIngredient(eps), 20.0, 20001));
    t.notes.push_back("basic ingredient: max |w'' + gamma w| on [0,20] = " + num(ode));
    if (ode > 1e-9) t.fail("basic ingredient ODE identity");

    // energy sandwich on random Lipschitz speeds
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.integer("run.seed")));
    double worst = std::numeric_limits<double>::infinity();
    for (long i = 0; i < c.integer("wave.random_speeds"); ++i) {
        auto s = random_lipschitz_speed(rng, cfg.mu1, std::min(cfg.mu2, 4.0 * cfg.mu1), 10.0);
        auto sol = integrate_mode(s.c, 10.0, 0.3, -1.0, 5.0, cfg.tol, 101);
        auto rep = energy_bounds_check_all(sol, EnergyBounds::from(s.mu1, s.mu2, s.L));
        worst = std::min({worst, rep.worst_lower_slack, rep.worst_upper_slack});
    }
    t.notes.push_back("energy sandwich: worst relative slack over random speeds = " + num(worst));
    if (worst < -1e-8) t.fail("energy sandwich");

    auto res = blowup_demo(cfg);
    t.notes.push_back("H_gamma = " + num(res.Hgamma) + ", r0 = " + num(res.r0) + ", mu3 = " + num(res.mu3));
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        const auto& sol = r.solution;
        for (std::size_t j = 0; j < sol.times.size(); ++j)
            t.rows.push_back(row(r.lambda, r.eps, r.delta_n, sol.times[j], sol.v[j], sol.vprime[j], sol.log_energy(j),
                                 r.log_ultra_lb, r.predicted_exponent));
        const std::string at = " (lambda=" + num(r.lambda) + ")";
        if (std::abs(r.v_at_delta) > 1e-8 * std::abs(r.v_scale)) t.fail("v(delta_n) = 0" + at);
        if (std::abs(r.vprime_at_delta / r.vprime_explicit - 1.0) > 1e-6) t.fail("v'(delta_n) against the explicit mode" + at);
        if (r.c_min < cfg.mu1 || r.c_max > cfg.mu2) t.fail("speed range" + at);
        if (r.holder_c > cfg.eps1 * cfg.H) t.fail("speed Hoelder budget" + at);
        if (r.log_ultra_lb > r.log_ultra_measured + 1e-9) t.fail("ultradistribution lower bound" + at);
        if (i && !(r.log_ultra_lb > res.rows[i - 1].log_ultra_lb)) t.fail("monotone ultradistribution norm" + at);
    }
    if (res.rows.size() >= 2) {
        auto fit = fit_growth(res);
        t.notes.push_back("growth fit: slope " + num(fit.slope) + " against 8 r0 delta_n/delta = " + num(fit.sharp_slope) +
                          ", relative error " + num(fit.rel_error));
    }
    return t;
}

// ---------------------------------------------------------------- transport

Table cmd_transport(const RunConfig& c) {
    Table t;
    t.columns = {"n", "lambda_n", "gamma_n", "sup_un", "w1p_budget_slack_p1", "w1p_budget_slack_p2",
                 "w1p_budget_slack_p4", "w1p_budget_slack_p8", "hs_norm_t0", "hs_norm_t1", "hs_norm_t2",
                 "blowup_lower_bound"};
    t.units = "hs_norm_tj: homogeneous H^{1/k0} norm of rho_n at t_j in {0, t/2, t}; slack = 1 - budget use";
    const long nmin = c.integer("transport.n_min"), nmax = c.integer("transport.n_max");
    require(nmin >= 1 && nmax >= nmin, "transport.n_min..transport.n_max must be a nonempty range of positive n");
    const int k0 = static_cast<int>(c.integer("transport.k0"));
    require(k0 >= 1, "transport.k0 must be a positive integer");
    const double s = 1.0 / k0, tol = c.real("transport.tol");

    MixerOptions mo;
    mo.grid = Grid2D{static_cast<std::size_t>(c.integer("transport.grid")), c.real("transport.side"), {}};
    mo.grid.validate();
    auto base = standin_mixer(c.real("transport.amplitude"), c.real("transport.switch_period"), mo);
    const auto sched = default_schedule();
    t.notes.push_back("ell_2 = " + num(sched.ell_d) + " at n = " + num(sched.ell_argmax_n) + ", p = " + num(sched.ell_argmax_p));
    t.notes.push_back("base triple: M_u = " + num(base.M_u) + ", M_grad = " + num(base.M_grad) + ", M_theta = " +
                      num(base.M_theta));

    // the rescaled probe: placement and resolution gates come first
    const Vec2 x0{c.real("transport.x0"), 0.0};
    const long probe_n = c.integer("transport.probe_n");
    auto probe = rescale_triple(base, sched, probe_n, x0, mo.grid);
    if (const auto& snap = c.str("transport.snapshot"); !snap.empty()) write_snapshot(snap, probe.theta_sampled);

    auto adm = check_admissible(base.velocity, mo.grid, {0.25 * base.switch_period, 1.25 * base.switch_period}, p4_budget,
                                {1, 2, 4, 8}, c.real("transport.div_tol"));
    t.notes.push_back("base admissibility: sup|u| = " + num(adm.sup_u) + ", worst ||Du||_p/p^4 = " +
                      num(adm.worst_sobolev_ratio) + ", divergence ratio = " + num(adm.max_div_ratio));
    // the gradient budget applies to the composed field, whose slack is tabulated per n below
    if (!adm.support_ok) t.fail("base admissibility: support in unit ball");
    if (!adm.sup_ok) t.fail("base admissibility: sup norm <= 1");
    if (!adm.divergence_ok) t.fail("base admissibility: divergence-free");

    auto checks = schedule_checks(sched);
    if (!checks.all_ok()) t.fail("schedule: " + checks.first_failure());

    // scaling laws on the probe: box rescaling is exact, resampling is checked against it
    const auto th = base.theta_sampled();
    for (double ss : {0.5, 1.0, s}) {
        const double want = probe.gamma * std::pow(probe.lambda, 1.0 - ss);
        const double got = hs_norm(box_rescale(th, probe.lambda, probe.gamma, x0), ss) / hs_norm(th, ss);
        if (std::abs(got / want - 1.0) > tol) t.fail("H^s scaling law (s=" + num(ss) + ")");
    }
    {
        const auto u = base.velocity.sample(0.25 * base.switch_period, mo.grid);
        const double nn = static_cast<double>(probe_n);
        for (double p : {1.0, 2.0, 4.0, 8.0}) {
            const double want = nn * std::pow(probe.lambda, 2.0 / p);
            const double got = w1p_norm(box_rescale(u, probe.lambda, nn, x0), p) / w1p_norm(u, p);
            if (std::abs(got / want - 1.0) > 100 * tol) t.fail("W^{1,p} scaling law (p=" + num(p) + ")");
        }
    }
    const double resampled = hs_norm(probe.theta_sampled, s) / (probe.gamma * std::pow(probe.lambda, 1.0 - s) * hs_norm(th, s));
    t.notes.push_back("probe n = " + num(probe_n) + ": resampled H^s ratio / prediction = " + num(resampled));

    // base evolution: rho_*(n t_j) for every row
    const double tl = c.real("transport.t");
    require(tl > 0.0, "transport.t must be positive");
    const std::vector<double> tj{0.0, 0.5 * tl, tl};
    AdvectOptions opt;
    for (long n = nmin; n <= nmax; ++n)
        for (double t_ : tj)
            if (t_ > 0) opt.snapshot_times.push_back(static_cast<double>(n) * t_);
    std::sort(opt.snapshot_times.begin(), opt.snapshot_times.end());
    opt.snapshot_times.erase(std::unique(opt.snapshot_times.begin(), opt.snapshot_times.end()), opt.snapshot_times.end());
    const auto tr = advect(base.velocity, th, static_cast<double>(nmax) * tl, c.real("transport.dt"), opt);
    auto star_norm = [&](double time) { return time == 0.0 ? hs_norm(th, s) : hs_norm(tr.at(time), s); };

    std::vector<long> ns;
    for (long n = nmin; n <= nmax; ++n) ns.push_back(n);
    const auto budget =
        blowup_budget(sched, k0, c.real("transport.Gamma0"), c.real("transport.C"), c.real("transport.c"), ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const long n = ns[i];
        const double lam = sched.lambda(n), gam = sched.gamma(n);
        std::vector<std::string> cells{num(n), num(lam), num(gam), num(base.M_u * static_cast<double>(n) * lam)};
        for (double p : {1.0, 2.0, 4.0, 8.0})
            cells.push_back(num(1.0 - composed_budget_lhs(c.real("transport.eps1"), base.M, sched.ell_d, base.R, n, p)));
        for (double t_ : tj) cells.push_back(num(gam * std::pow(lam, 1.0 - s) * star_norm(static_cast<double>(n) * t_)));
        cells.push_back(num(budget.rows[i].lower_bound));
        std::string line;
        for (const auto& cell : cells) line += (line.empty() ? "" : ",") + cell;
        t.rows.push_back(line);
    }
    std::string within = "composed field u0 + u_n is outside the p^4 budget for every n on this range";
    for (long n : ns)
        if (composed_admissible(c.real("transport.eps1"), base.M, sched.ell_d, base.R, n, {1.0, 2.0, 4.0, 8.0})) {
            within = "composed field u0 + u_n within the p^4 budget from n = " + num(n);
            break;
        }
    t.notes.push_back(within);
    t.notes.push_back(budget.crossing ? "blowup bound exceeds k0 + Gamma0 from n = " + num(*budget.crossing)
                                      : std::string("blowup bound stays below k0 + Gamma0 on this range"));
    return t;
}

// ---------------------------------------------------------------- exercise

Table cmd_exercise(const RunConfig& c) {
    Table t;
    t.columns = {"n", "holder_const", "local_lip_const"};
    t.units = "order-1/2 constant of f_n, Lipschitz constant of f_n on one tooth";
    const double H = c.real("exercise.H"), eps1 = c.real("exercise.eps1"), tol = c.real("exercise.tol");
    const auto points = static_cast<std::size_t>(c.integer("exercise.grid_points"));
    t.notes.push_back("sawtooth order-1/2 constant = " + num(sawtooth_holder_constant()));
    for (long n = c.integer("exercise.n_min"); n <= c.integer("exercise.n_max"); ++n) {
        auto fn = sawtooth_perturb(zero_fn(), static_cast<int>(n), H, eps1);
        const double n2 = static_cast<double>(n) * n;
        // two teeth: the constant is invariant under x -> n^2 x, so this window sees every pair shape
        const double hc = holder_constant(fn, 0.5, uniform_grid(0.0, 2.0 / n2, points)).constant;
        const double lc = holder_constant(fn, 1.0, uniform_grid(0.0, 0.5 / n2, points)).constant;
        t.rows.push_back(row(n, hc, lc));
        if (hc > eps1 * H * (1 + tol)) t.fail("Hoelder budget (n=" + num(n) + ")");
    }
    return t;
}

// ---------------------------------------------------------------- driver

struct Command {
    std::string name;
    std::string section;
    std::string default_csv;
    Table (*run)(const RunConfig&);
};

struct Sweep {
    std::string key;
    long lo = 0, hi = 0;
};

Sweep parse_sweep(const std::string& text, const std::string& section, const RunConfig& cfg) {
    const auto eq = text.find('='), dots = text.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw config_error("--sweep expects key=a..b, got '" + text + "'");
    Sweep s;
    s.key = RunConfig::trim(text.substr(0, eq));
    if (s.key.find('.') == std::string::npos) s.key = section + "." + s.key;
    try {
        s.lo = std::stol(text.substr(eq + 1, dots - eq - 1));
        s.hi = std::stol(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw config_error("--sweep bounds must be integers, got '" + text + "'");
    }
    if (s.hi < s.lo) throw config_error("--sweep range is empty: '" + text + "'");
    // n sweeps over the rows of the command itself
    if (s.key == section + ".n" && cfg.known(section + ".n_min")) return s;
    if (!cfg.known(s.key)) throw config_error("unknown config key '" + s.key + "'");
    return s;
}

int run_command(const Command& cmd, RunConfig cfg, const std::string& csv, const std::optional<Sweep>& sweep) {
    std::vector<std::string> lines;
    std::vector<std::string> notes;
    std::string failure;
    std::vector<std::string> columns;
    std::string units;

    auto collect = [&](const RunConfig& rc, const std::string& prefix) {
        Table t = cmd.run(rc);
        columns = t.columns;
        units = t.units;
        for (auto& r : t.rows) lines.push_back(prefix + r);
        for (auto& n : t.notes) notes.push_back((prefix.empty() ? "" : "[" + prefix.substr(0, prefix.size() - 1) + "] ") + n);
        if (failure.empty() && !t.first_failure.empty()) failure = t.first_failure;
    };

    std::string sweep_column;
    if (sweep && sweep->key == cmd.section + ".n") {
        cfg.set(cmd.section + ".n_min", std::to_string(sweep->lo));
        cfg.set(cmd.section + ".n_max", std::to_string(sweep->hi));
        collect(cfg, "");
    } else if (sweep) {
        sweep_column = sweep->key;
        for (long v = sweep->lo; v <= sweep->hi; ++v) {
            RunConfig rc = cfg;
            rc.set(sweep->key, std::to_string(v));
            collect(rc, std::to_string(v) + ",");
        }
    } else {
        collect(cfg, "");
    }

    std::ostringstream out;
    out << "# pathology_cli " << kVersion << "\n# command: " << cmd.name << "\n";
    if (sweep) out << "# sweep: " << sweep->key << "=" << sweep->lo << ".." << sweep->hi << "\n";
    out << "# config:\n";
    std::vector<std::string> sections{"run", cmd.section};
    if (cmd.section == "bump") sections.push_back("kohn");
    for (const auto& k : cfg.keys(sections)) out << "#   " << k << " = " << cfg.str(k) << "\n";
    out << "# units: " << units << "\n";
    for (const auto& n : notes) out << "# " << n << "\n";
    out << "# status: " << (failure.empty() ? "all checks hold" : "FAILED: " + failure) << "\n";
    if (!sweep_column.empty()) out << sweep_column << ",";
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& l : lines) out << l << "\n";

    if (csv == "-") {
        std::cout << out.str();
    } else {
        std::ofstream f(csv);
        if (!f) throw config_error("cannot write '" + csv + "'");
        f << out.str();
    }
    for (const auto& n : notes) std::cerr << cmd.name << ": " << n << "\n";
    if (!failure.empty()) {
        std::cerr << cmd.name << ": check failed: " << failure << "\n";
        return 3;
    }
    std::cerr << cmd.name << ": all checks hold\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Command> commands{
        {"bump", "bump", "bump_report.csv", cmd_bump},
        {"wave", "wave", "wave_modes.csv", cmd_wave},
        {"transport", "transport", "transport_sweep.csv", cmd_transport},
        {"exercise", "exercise", "exercise.csv", cmd_exercise},
    };

    CLI::App app{"constructions and checks for Hoelder-type pathologies"};
    app.require_subcommand(1);
    std::string config_path, csv, sweep_text;
    std::vector<std::string> sets;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    bool list_keys = false;
    std::vector<CLI::App*> subs;
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, "run the " + cmd.name + " checks");
        sub->add_option("--config", config_path, "flat section.key = value file");
        sub->add_option("--csv", csv, "output path, or - for standard output (default " + cmd.default_csv + ")");
        sub->add_option("--set", sets, "override one key: section.key=value");
        sub->add_option("--sweep", sweep_text, "key=a..b: integer sweep; n sweeps the rows");
        sub->add_option("--tol", tol, "sets <section>.tol");
        sub->add_option("--seed", seed, "sets run.seed");
        sub->add_flag("--list-keys", list_keys, "print the command's config keys with defaults and exit");
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const auto& cmd = commands[i];
        try {
            RunConfig cfg;
            declare_all(cfg);
            if (list_keys) {
                std::vector<std::string> sections{"run", cmd.section};
                if (cmd.section == "bump") sections.push_back("kohn");
                for (const auto& k : cfg.keys(sections))
                    std::cout << k << " = " << cfg.describe(k).default_value << "    # " << cfg.describe(k).doc << "\n";
                return 0;
            }
            if (!config_path.empty()) cfg.load_file(config_path);
            for (const auto& s : sets) cfg.set_assignment(s);
            if (tol) cfg.set(cmd.section + ".tol", num(*tol));
            if (seed) cfg.set("run.seed", std::to_string(*seed));
            std::optional<Sweep> sweep;
            if (!sweep_text.empty()) sweep = parse_sweep(sweep_text, cmd.section, cfg);
            return run_command(cmd, cfg, csv.empty() ? cmd.default_csv : csv, sweep);
        } catch (const config_error& e) {
            std::cerr << cmd.name << ": config error: " << e.what() << "\n";
            return 2;
        } catch (const precondition_error& e) {
            std::cerr << cmd.name << ": precondition: " << e.what() << "\n";
            return 2;
        } catch (const construction_impossible& e) {
            std::cerr << cmd.name << ": construction impossible: " << e.what() << "\n";
            return 2;
        } catch (const integration_failure& e) {
            std::cerr << cmd.name << ": numerical failure: " << e.what() << "\n";
            return 4;
        } catch (const std::exception& e) {
            std::cerr << cmd.name << ": numerical failure: " << e.what() << "\n";
            return 4;
        }
    }
    return 2;
}
