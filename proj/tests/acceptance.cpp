// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fracmp/energy.hpp"
#include "fracmp/errors.hpp"
#include "fracmp/grid_spectral.hpp"
#include "fracmp/model.hpp"
#include "fracmp/moser.hpp"
#include "fracmp/solvers.hpp"

using namespace fracmp;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool pass, const std::string& detail, double secs,
            double budget) {
    const bool timed_ok = secs < budget;
    const bool ok = pass && timed_ok;
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%s; %.1fs of %.0fs budget)\n", ok ? "PASS" : "FAIL", idx,
                name, detail.c_str(), secs, budget);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

void criterion1_operator() {
    Timer tm;
    Grid1D g(40.0, 4096);
    bool pass = true;

    double eig_err = 0.0;
    {
        const double xi = g.wavenumber(16);
        Field u = Field::from_function(g, [xi](double x) { return std::cos(xi * x); });
        Field lu = frac_laplacian(u, 0.5);
        for (int i = 0; i < g.n_points; ++i)
            eig_err = std::max(eig_err, std::abs(lu.values[i] - xi * u.values[i]) / xi);
        pass = pass && eig_err <= 1e-10;
    }

    double oracle_err = 0.0;
    {
        Field u = Field::from_function(g, [](double x) { return std::exp(-x * x); });
        Field lu = frac_laplacian(u, 0.5);
        double sup = 0.0;
        for (double v : lu.values) sup = std::max(sup, std::abs(v));
        const int i0 = g.n_points / 2;
        for (int off = -512; off <= 512; off += 64) {
            const int i = i0 + off;
            oracle_err = std::max(
                oracle_err, std::abs(singular_integral_oracle(u, g.point(i)) - lu.values[i]));
        }
        oracle_err /= sup;
        pass = pass && oracle_err <= 1e-6;
    }
    report(1, "operator correctness", pass,
           fmt("eigenfunction rel err %.2e, oracle rel sup err %.2e", eig_err, oracle_err),
           tm.seconds(), 10.0);
}

void criterion2_moser_family() {
    Timer tm;
    bool pass = true;
    double worst_dirichlet = 0.0, worst_seam = 0.0, worst_semi = 0.0;
    for (int k : {4, 64, 1024}) {
        const MoserEnergy2D e = moser_energy_2d(k);
        worst_dirichlet = std::max(worst_dirichlet, std::abs(e.dirichlet_full_plane - 1.0));

        MoserFamily fam(k, [](double x) { return x * x + 1.0; });
        const double r1 = 1.0 / k;
        worst_seam = std::max(
            worst_seam,
            std::abs(fam.psi(r1 * (1 - 1e-13), 0.0) - fam.psi(r1 * (1 + 1e-13), 0.0)));
        worst_seam = std::max(
            worst_seam, std::abs(fam.psi(1.0 - 1e-13, 0.0) - fam.psi(1.0 + 1e-13, 0.0)));

        int n = 2048;
        while (2.0 * 4.0 / n > 1.0 / (4.0 * k)) n *= 2;
        Grid1D g(4.0, n);
        Field tr = fam.trace_field(g);
        const Field q = frac_laplacian(tr, 0.25);
        worst_semi = std::max(worst_semi, inner_l2(q, q));
    }
    pass = worst_dirichlet <= 1e-10 && worst_seam <= 1e-12 && worst_semi <= 0.5 + 1e-6;
    report(2, "Moser family exactness", pass,
           fmt("|dirichlet-1| %.2e, seam %.2e, trace seminorm %.6f", worst_dirichlet,
               worst_seam, worst_semi),
           tm.seconds(), 5.0);
}

void criterion3_critical_level_p() {
    Timer tm;
    ModelSpec m = catalog_model("p-cubic");
    Grid1D g(4.0, 16384);
    EnergyContext ctx(g, m);
    CriticalLevelReport rep = critical_level_verdict(ctx, {8, 64, 512}, Functional::I);
    bool pass = rep.verdict && rep.threshold == 0.5 * M_PI;
    double min_ray = rep.rows[0].value;
    for (const auto& r : rep.rows) {
        pass = pass && r.value < 0.5 * M_PI && r.margin > 0.0;
        min_ray = std::min(min_ray, r.value);
    }

    const auto& pot = m.potential;
    MoserFamily fam(64, [&pot](double x) { return pot(x); });
    Field phi = fam.normalized_trace_field(g);
    Field e = find_negative_endpoint(ctx, phi, Functional::I);
    SolveReport mp = mountain_pass(ctx, Functional::I, e, {});
    pass = pass && mp.mp_level <= min_ray + 1e-4;

    report(3, "critical-level experiment (P)", pass,
           fmt("min ray %.6f < pi/2, margin %.6f, mp level %.6f", min_ray,
               0.5 * M_PI - min_ray, mp.mp_level),
           tm.seconds(), 300.0);
}

void criterion4_critical_level_q() {
    Timer tm;
    ModelSpec m = catalog_model("q-quartic");
    const double threshold = 0.5 * (M_PI + 0.5 * M_PI * M_PI);
    Grid1D g(4.0, 16384);
    EnergyContext ctx(g, m);
    CriticalLevelReport rep = critical_level_verdict(ctx, {8, 64, 512}, Functional::J);
    bool pass = std::abs(rep.threshold - threshold) < 1e-14 && rep.verdict;
    double worst_margin = rep.rows[0].margin;
    for (const auto& r : rep.rows) {
        pass = pass && r.margin > 0.0;
        worst_margin = std::min(worst_margin, r.margin);
    }
    report(4, "critical-level experiment (Q)", pass,
           fmt("threshold %.6f, worst margin %.6f", threshold, worst_margin), tm.seconds(),
           300.0);
}

void criterion5_variational_consistency() {
    Timer tm;
    bool pass = true;
    Grid1D g(20.0, 1024);
    EnergyContext cp(g, catalog_model("p-cubic"));
    EnergyContext cq(g, catalog_model("q-quartic"));

    double worst_fd = 0.0;
    std::mt19937_64 rng(2024);
    const double eps = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        Field u = random_band_limited(g, 16, 0.7, rng);
        Field v = random_band_limited(g, 16, 0.7, rng);
        for (int which = 0; which < 2; ++which) {
            const Functional fn = which ? Functional::J : Functional::I;
            const EnergyContext& ctx = which ? cq : cp;
            GradientReport gr = gradient(ctx, u, fn);
            Field up(g), um(g);
            for (int i = 0; i < g.n_points; ++i) {
                up.values[i] = u.values[i] + eps * v.values[i];
                um.values[i] = u.values[i] - eps * v.values[i];
            }
            const double fd = (energy_of(ctx, up, fn) - energy_of(ctx, um, fn)) / (2 * eps);
            const double pairing = inner_v(ctx, gr.gradient, v);
            worst_fd = std::max(worst_fd,
                                std::abs(fd - pairing) / std::max(1.0, std::abs(pairing)));
        }
    }
    pass = pass && worst_fd <= 1e-6;

    double worst_root = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Field u = random_band_limited(g, 10, 0.8, rng);
        for (auto& x : u.values) x = std::abs(x);
        const double ts = nehari_scale(cq, u, Functional::J);
        const double vn = v_norm_sq(cq, u);
        Field tu(g);
        for (int i = 0; i < g.n_points; ++i) tu.values[i] = ts * u.values[i];
        const Field h = cq.growth(tu);
        double hv = 0.0;
        for (int i = 0; i < g.n_points; ++i) hv += h.values[i] * u.values[i];
        hv *= g.dx;
        const double kappa = eval_m(*cq.model().kirchhoff, ts * ts * vn);
        worst_root =
            std::max(worst_root, std::abs(kappa * ts * vn - hv) / (kappa * ts * vn));
    }
    pass = pass && worst_root <= 1e-10;

    Grid1D gs(40.0, 4096);
    EnergyContext ctxq(gs, catalog_model("q-quartic"));
    SolveReport gs_rep = nehari_minimize(ctxq, Functional::J, {});
    Field e = find_negative_endpoint(ctxq, gs_rep.solution, Functional::J);
    SolveReport mp = mountain_pass(ctxq, Functional::J, e, {});
    const double gap = mp.mp_level - gs_rep.nehari_level;
    pass = pass && gap <= 1e-4;

    report(5, "variational consistency", pass,
           fmt("fd rel err %.2e, root resid %.2e, c*-b %.2e", worst_fd, worst_root, gap),
           tm.seconds(), 600.0);
}

void criterion6_solver_soundness() {
    Timer tm;
    bool pass = true;

    double sup_err = 0.0;
    {
        Grid1D g(40.0, 1024);
        ModelSpec m = catalog_model("p-cubic");
        Field target = Field::from_function(g, [](double x) { return std::exp(-x * x); });
        EnergyContext plain(g, m);
        EnergyContext ctx = EnergyContext::with_forcing(g, m, plain.apply_operator(target));
        Field seed = Field::from_function(
            g, [](double x) { return std::exp(-0.5 * x * x) * (1.0 + 0.3 * std::cos(x)); });
        SolveOptions opts;
        opts.tol_dual = 1e-9;
        opts.tol_residual = 1e-8;
        SolveReport rep = descend_to_solution(ctx, seed, Functional::I, opts);
        for (int i = 0; i < g.n_points; ++i)
            sup_err = std::max(sup_err, std::abs(rep.solution.values[i] - target.values[i]));
        pass = pass && sup_err <= 1e-6;
    }

    Grid1D g(40.0, 4096);
    SolveReport p_rep;
    {
        EnergyContext ctx(g, catalog_model("p-cubic"));
        Field seed = Field::from_function(g, [](double x) { return std::exp(-x * x); });
        p_rep = descend_to_solution(ctx, seed, Functional::I, {});
        pass = pass && p_rep.dual_norm <= 1e-6 && p_rep.weak_res <= 1e-5 &&
               p_rep.min_value >= -1e-10;
    }

    double claim1 = 0.0;
    {
        EnergyContext ctx(g, catalog_model("q-quartic"));
        Field seed = Field::from_function(g, [](double x) { return std::exp(-x * x); });
        SolveReport q_rep = descend_to_solution(ctx, seed, Functional::J, {});
        claim1 = q_rep.claim1_gap;
        pass = pass && claim1 >= -1e-6;
    }

    report(6, "solver soundness", pass,
           fmt("manufactured sup err %.2e, P dual %.2e, Q claim-1 gap %.2e", sup_err,
               p_rep.dual_norm, claim1),
           tm.seconds(), 600.0);
}

void criterion7_mt_threshold() {
    Timer tm;
    const std::vector<int> ks = {4, 16, 64, 256, 1024, 4096};
    std::vector<double> sub, super;
    for (int k : ks) {
        int n = 2048;
        while (2.0 * 4.0 / n > 1.0 / (4.0 * k)) n *= 2;
        Grid1D g(4.0, n);
        MoserFamily fam(k, [](double x) { return x * x + 1.0; });
        Field u = fam.normalized_trace_field(g);
        sub.push_back(mt_functional(u, 0.9 * M_PI));
        super.push_back(mt_functional(u, 1.2 * M_PI));
    }
    double sub_max = 0.0;
    for (double v : sub) sub_max = std::max(sub_max, v);
    const bool bounded = sub_max < 10.0;
    const double growth = super.back() / super.front();
    const bool grows = growth >= 10.0;
    report(7, "Moser-Trudinger threshold behavior", bounded && grows,
           fmt("bounded at 0.9pi (max %.3f), growth factor at 1.2pi %.2f (need >= 10)",
               sub_max, growth),
           tm.seconds(), 120.0);
}

void criterion8_validators() {
    Timer tm;
    bool pass = true;
    for (const auto& m : catalog()) pass = pass && validate_assumptions(m).all_pass();

    ModelSpec broken;
    broken.name = "broken";
    broken.potential = {PotentialKind::Polynomial, 1.0, 2.0};
    broken.nonlinearity.mode = NonlinearityMode::F;
    broken.nonlinearity.p = 3.0;
    broken.nonlinearity.theta = 3.5;
    const ValidationReport rep = validate_assumptions(broken);
    const auto* mono = rep.find("f1.monotone");
    pass = pass && !rep.all_pass() && mono && !mono->pass && mono->location > 0.0;

    double worst = 0.0;
    KirchhoffSpec ks{1.0, 2.0, 0.0, 0.0, 1.0};
    for (double t = 0.0; t <= 64.0; t += 0.125) {
        const double lhs = 0.5 * eval_M(ks, t) - 0.25 * eval_m(ks, t) * t;
        worst = std::max(worst, std::abs(lhs - 0.25 * ks.m0 * t) / std::max(1.0, 0.25 * t));
    }
    pass = pass && worst <= 1e-12;

    report(8, "structural validators", pass,
           fmt("catalog ok, counterexample located, identity rel err %.2e", worst),
           tm.seconds(), 120.0);
}

}  // namespace

int main() {
    criterion1_operator();
    criterion2_moser_family();
    criterion3_critical_level_p();
    criterion4_critical_level_q();
    criterion5_variational_consistency();
    criterion6_solver_soundness();
    criterion7_mt_threshold();
    criterion8_validators();
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
