#include "fracmp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "fracmp/errors.hpp"

namespace fracmp {

namespace detail {

RayMaxResult maximize_ray(const std::function<double(double)>& energy_of_t,
                          const RayMaxOptions& opts) {
    // Geometric scan: double t until the energy has decreased twice in a row.
    std::vector<double> ts, es;
    double t = opts.t_init;
    int decreases = 0;
    while (true) {
        double e;
        try {
            e = energy_of_t(t);
        } catch (const MagnitudeError&) {
            throw UnboundedRayError("ray_max: overflow guard hit before an interior maximum");
        }
        ts.push_back(t);
        es.push_back(e);
        const size_t n = es.size();
        if (n >= 2) decreases = (es[n - 1] < es[n - 2]) ? decreases + 1 : 0;
        if (decreases >= 2) break;
        if (t > opts.t_cap)
            throw UnboundedRayError("ray_max: no decrease before the scan cap");
        t *= 2.0;
    }
    size_t m = 0;
    for (size_t i = 1; i < es.size(); ++i)
        if (es[i] > es[m]) m = i;
    double lo = (m == 0) ? 0.25 * ts[0] : ts[m - 1];
    double hi = ts[m + 1];

    // Golden-section maximization.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = energy_of_t(x1);
    double f2 = energy_of_t(x2);
    while (hi - lo > opts.rel_width * hi) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = energy_of_t(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = energy_of_t(x1);
        }
    }
    // Golden section alone stalls at sqrt(eps) of the maximizer; polish with
    // Newton steps on the central-difference derivative.
    double t_opt = 0.5 * (lo + hi);
    const double h = 1e-5 * t_opt;
    for (int it = 0; it < 6; ++it) {
        const double ep = energy_of_t(t_opt + h), e0 = energy_of_t(t_opt), em = energy_of_t(t_opt - h);
        const double d1 = (ep - em) / (2.0 * h);
        const double d2 = (ep - 2.0 * e0 + em) / (h * h);
        if (!(d2 < 0.0)) break;
        const double step = -d1 / d2;
        if (std::abs(step) > 0.25 * t_opt) break;
        t_opt += step;
        if (std::abs(step) < 1e-12 * t_opt) break;
    }
    RayMaxResult out;
    out.t_star = t_opt;
    out.value = energy_of_t(t_opt);
    out.derivative_residual =
        std::abs(energy_of_t(t_opt + h) - energy_of_t(t_opt - h)) / (2.0 * h);
    return out;
}

}  // namespace detail

RayMaxResult ray_max(const EnergyContext& ctx, const Field& phi, Functional which,
                     const RayMaxOptions& opts) {
    require_finite(phi, "ray_max");
    if (phi.max_abs() == 0.0) throw DomainError("ray_max: zero direction");
    auto e = [&](double t) {
        Field u(phi.grid);
        for (int i = 0; i < phi.grid.n_points; ++i) u.values[i] = t * phi.values[i];
        return energy_of(ctx, u, which);
    };
    return detail::maximize_ray(e, opts);
}

CriticalLevelReport critical_level_verdict(const EnergyContext& ctx,
                                           const std::vector<int>& k_list, Functional which,
                                           int workers) {
    if (k_list.empty()) throw ConfigError({"critical-level: k_list must not be empty"});
    CriticalLevelReport rep;
    rep.threshold = (which == Functional::J && ctx.model().kirchhoff)
                        ? 0.5 * eval_M(*ctx.model().kirchhoff, M_PI)
                        : 0.5 * M_PI;
    rep.rows.resize(k_list.size());
    const auto& pot = ctx.model().potential;
    auto run_one = [&](size_t idx) {
        const int k = k_list[idx];
        MoserFamily fam(k, [&pot](double x) { return pot(x); });
        Field phi = fam.normalized_trace_field(ctx.grid());
        RayMaxResult r = ray_max(ctx, phi, which);
        CriticalLevelRow row;
        row.k = k;
        row.t_star = r.t_star;
        row.t_star_sq = r.t_star * r.t_star;
        row.value = r.value;
        row.threshold = rep.threshold;
        row.margin = rep.threshold - r.value;
        rep.rows[idx] = row;
    };
    if (workers <= 1 || k_list.size() == 1) {
        for (size_t i = 0; i < k_list.size(); ++i) run_one(i);
    } else {
        std::vector<std::future<void>> futs;
        for (size_t i = 0; i < k_list.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : futs) f.get();
    }
    rep.verdict = std::all_of(rep.rows.begin(), rep.rows.end(),
                              [](const CriticalLevelRow& r) { return r.margin > 0.0; });
    return rep;
}

namespace {

// <E'(t u), u> as a function of the ray parameter.
double ray_derivative(const EnergyContext& ctx, const Field& u, double vnorm, Functional which,
                      double t) {
    double kappa = 1.0;
    if (which == Functional::J) kappa = eval_m(*ctx.model().kirchhoff, t * t * vnorm);
    Field tu(u.grid);
    for (int i = 0; i < u.grid.n_points; ++i) tu.values[i] = t * u.values[i];
    const Field h = ctx.growth(tu);
    double nonlin = 0.0;
    for (int i = 0; i < u.grid.n_points; ++i) nonlin += h.values[i] * u.values[i];
    nonlin *= u.grid.dx;
    return kappa * t * vnorm - nonlin;
}

}  // namespace

namespace detail {

double find_positive_root(const std::function<double(double)>& g,
                          const std::function<double(double)>& scale_of, double g_rel_tol,
                          double t_cap) {
    double a = std::min(1e-6, 0.5 * t_cap);
    if (!(g(a) > 0.0))
        throw GeometryError("nehari_scale: derivative not positive at small t");
    double b = a;
    while (g(b) > 0.0) {
        b *= 2.0;
        if (b > t_cap)
            throw GeometryError("nehari_scale: no sign change before the overflow guard");
    }
    a = b / 2.0;

    // Secant trials interleaved with bisection: plain false position
    // stagnates against the steep exponential side of the bracket.
    double ga = g(a), gb = g(b);
    double t = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const double w = b - a;
        double cand = b - gb * w / (gb - ga);
        if (it % 2 == 1 || !(cand > a + 0.01 * w && cand < b - 0.01 * w))
            cand = 0.5 * (a + b);
        const double gc = g(cand);
        t = cand;
        if (std::abs(gc) <= g_rel_tol * std::max(scale_of(cand), 1e-300) || w < 4e-16 * b)
            return t;
        if (gc > 0.0) {
            a = cand;
            ga = gc;
        } else {
            b = cand;
            gb = gc;
        }
    }
    return t;
}

}  // namespace detail

double nehari_scale(const EnergyContext& ctx, const Field& u, Functional which,
                    const NehariOptions& opts) {
    require_finite(u, "nehari_scale");
    const double vnorm = v_norm_sq(ctx, u);
    if (vnorm == 0.0) throw DomainError("nehari_scale: zero field");
    if (which == Functional::J && !ctx.model().kirchhoff)
        throw DomainError("nehari_scale: model has no Kirchhoff term");

    const double amp = u.max_abs();
    const double t_overflow =
        std::min(opts.t_cap, 0.98 * std::sqrt(kOverflowGuardTSq) / amp);
    auto g = [&](double t) { return ray_derivative(ctx, u, vnorm, which, t); };
    auto scale_of = [&](double t) {
        const double kappa =
            (which == Functional::J) ? eval_m(*ctx.model().kirchhoff, t * t * vnorm) : 1.0;
        return std::abs(kappa * t * vnorm);
    };
    return detail::find_positive_root(g, scale_of, opts.g_rel_tol, t_overflow);
}

namespace {

struct DescentState {
    bool clipped = false;
    double ar_proxy_min = std::numeric_limits<double>::infinity();
    double eq41_min = std::numeric_limits<double>::infinity();
    double max_norm = 0.0;
};

void clip_undershoot(Field& u, bool& clipped) {
    const double floor = -1e-12 * std::max(1.0, u.max_abs());
    for (auto& v : u.values)
        if (v < 0.0 && v > floor) {
            v = 0.0;
            clipped = true;
        }
}

void observe_iterate(const EnergyContext& ctx, const Field& u, Functional which, double energy,
                     DescentState& st) {
    const double v = v_norm_sq(ctx, u);
    st.max_norm = std::max(st.max_norm, std::sqrt(v));
    const Field h = ctx.growth(u);
    double hu = 0.0;
    for (int i = 0; i < u.grid.n_points; ++i) hu += h.values[i] * u.values[i];
    hu *= u.grid.dx;
    if (which == Functional::J && ctx.model().kirchhoff) {
        const auto& ks = *ctx.model().kirchhoff;
        const double m = eval_m(ks, v);
        const double slope = m * v - hu;  // <J'(u), u>
        const double theta = ctx.model().nonlinearity.theta_exponent();
        st.ar_proxy_min = std::min(st.ar_proxy_min,
                                   energy - 0.25 * slope - (0.25 - 1.0 / theta) * m * v);
        st.eq41_min = std::min(st.eq41_min, 0.5 * eval_M(ks, v) - 0.25 * m * v);
    } else {
        const double mu = ctx.model().nonlinearity.ar_exponent();
        const double slope = v - hu;
        st.ar_proxy_min =
            std::min(st.ar_proxy_min, energy - slope / mu - (0.5 - 1.0 / mu) * v);
    }
}

Field axpy(const Field& u, double alpha, const Field& g) {
    Field out(u.grid);
    for (int i = 0; i < u.grid.n_points; ++i) out.values[i] = u.values[i] + alpha * g.values[i];
    return out;
}

}  // namespace

SolveReport descend_to_solution(const EnergyContext& ctx, const Field& seed, Functional which,
                                const SolveOptions& opts) {
    require_finite(seed, "descend_to_solution");
    const double seed_norm = std::sqrt(v_norm_sq(ctx, seed));
    if (seed_norm < 1e-14)
        throw TrivialLimitError("descend_to_solution: seed is the trivial critical point");

    const bool project = opts.nehari_projection && !ctx.has_forcing();
    Field u = seed;
    DescentState st;
    if (project) {
        const double t = nehari_scale(ctx, u, which);
        for (auto& v : u.values) v *= t;
    }

    SolveReport rep;
    double tau = 1.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        GradientReport gr = gradient(ctx, u, which);
        rep.history.emplace_back(gr.energy, gr.dual_norm);
        if (opts.history_sink) opts.history_sink->emplace_back(gr.energy, gr.dual_norm);
        observe_iterate(ctx, u, which, gr.energy, st);
        rep.iterations = it + 1;

        const double wres = weak_residual(ctx, u, which);
        if (gr.dual_norm <= opts.tol_dual && wres <= opts.tol_residual) {
            rep.solution = u;
            rep.energy = gr.energy;
            rep.dual_norm = gr.dual_norm;
            rep.weak_res = wres;
            break;
        }
        if (it + 1 == opts.max_iterations)
            throw ConvergenceError("descend_to_solution: iteration budget exhausted",
                                   gr.dual_norm);

        // Backtracking line search along the negative Sobolev gradient;
        // Nehari reprojection keeps the iterate on the natural constraint.
        bool accepted = false;
        double trial = tau;
        const double slope = gr.dual_norm * gr.dual_norm;
        for (int ls = 0; ls < 40 && !accepted; ++ls) {
            try {
                Field cand = axpy(u, -trial, gr.gradient);
                clip_undershoot(cand, st.clipped);
                if (project) {
                    const double t = nehari_scale(ctx, cand, which);
                    for (auto& v : cand.values) v *= t;
                }
                const double e1 = energy_of(ctx, cand, which);
                if (e1 <= gr.energy - 1e-4 * trial * slope) {
                    u = cand;
                    tau = std::min(trial * 1.5, 8.0);
                    accepted = true;
                } else {
                    trial *= 0.5;
                }
            } catch (const MagnitudeError&) {
                trial *= 0.25;
            } catch (const GeometryError&) {
                trial *= 0.25;
            }
        }
        if (!accepted)
            throw ConvergenceError("descend_to_solution: line search stalled", gr.dual_norm);

        const double un = std::sqrt(v_norm_sq(ctx, u));
        if (un < 1e-8 * std::max(1.0, seed_norm))
            throw TrivialLimitError("descend_to_solution: iterates collapse to zero");
    }

    // Final Nehari projection so the constraint holds exactly in the report.
    if (project) {
        const double t = nehari_scale(ctx, u, which);
        for (auto& v : u.values) v *= t;
        rep.solution = u;
        GradientReport gr = gradient(ctx, u, which);
        rep.energy = gr.energy;
        rep.dual_norm = gr.dual_norm;
        rep.weak_res = weak_residual(ctx, u, which);
    }

    const double v = v_norm_sq(ctx, rep.solution);
    rep.norm_limit = std::sqrt(v);
    rep.min_value = rep.solution.min_value();
    rep.clipped = st.clipped;
    rep.ar_proxy_min = st.ar_proxy_min;
    rep.eq41_min = (which == Functional::J) ? st.eq41_min : 0.0;
    rep.max_iterate_norm = st.max_norm;
    {
        const Field h = ctx.growth(rep.solution);
        double hu = 0.0;
        for (int i = 0; i < rep.solution.grid.n_points; ++i)
            hu += h.values[i] * rep.solution.values[i];
        hu *= rep.solution.grid.dx;
        const double kappa = stiffness_weight(ctx, rep.solution, which);
        rep.claim1_gap = kappa * v - hu;
    }
    return rep;
}

SolveReport nehari_minimize(const EnergyContext& ctx, Functional which,
                            const SolveOptions& opts) {
    const Grid1D& g = ctx.grid();
    std::vector<Field> seeds;
    seeds.push_back(Field::from_function(g, [](double x) { return std::exp(-x * x); }));
    if (g.dx <= 1.0 / 32.0 && g.half_length >= 1.0) {
        const auto& pot = ctx.model().potential;
        MoserFamily fam(8, [&pot](double x) { return pot(x); });
        seeds.push_back(fam.normalized_trace_field(g));
    }
    std::mt19937_64 rng(opts.seed);
    while (static_cast<int>(seeds.size()) < opts.restarts) {
        Field r = random_band_limited(g, 12, 0.8, rng);
        for (auto& v : r.values) v = std::abs(v);
        seeds.push_back(r);
    }
    if (static_cast<int>(seeds.size()) > std::max(opts.restarts, 1))
        seeds.resize(std::max(opts.restarts, 1));

    SolveOptions inner = opts;
    inner.nehari_projection = true;
    SolveReport best;
    bool have = false;
    std::string fail_note;
    for (const auto& s : seeds) {
        try {
            SolveReport r = descend_to_solution(ctx, s, which, inner);
            if (!have || r.energy < best.energy) {
                best = r;
                have = true;
            }
        } catch (const Error& e) {
            fail_note += std::string(fail_note.empty() ? "" : "; ") + e.what();
        }
    }
    if (!have)
        throw ConvergenceError("nehari_minimize: every restart failed: " + fail_note, 0.0);
    best.nehari_level = best.energy;
    return best;
}

Field find_negative_endpoint(const EnergyContext& ctx, const Field& u, Functional which) {
    double t = 1.0;
    for (int it = 0; it < 200; ++it) {
        Field e(u.grid);
        for (int i = 0; i < u.grid.n_points; ++i) e.values[i] = t * u.values[i];
        double val;
        try {
            val = energy_of(ctx, e, which);
        } catch (const MagnitudeError&) {
            throw UnboundedRayError("find_negative_endpoint: overflow before a sign change");
        }
        if (val < 0.0) return e;
        t *= 1.5;
    }
    throw UnboundedRayError("find_negative_endpoint: no sign change before the scan cap");
}

SolveReport mountain_pass(const EnergyContext& ctx, Functional which, const Field& e,
                          const SolveOptions& opts) {
    require_finite(e, "mountain_pass");
    if (opts.path_points < 16) throw DomainError("mountain_pass: at least 16 path points");
    const double ee = energy_of(ctx, e, which);
    if (!(ee < 0.0)) throw DomainError("mountain_pass: endpoint energy must be negative");

    const int P = opts.path_points;
    const int n = ctx.grid().n_points;
    std::vector<Field> nodes(P, Field(ctx.grid()));
    for (int i = 0; i < P; ++i) {
        const double s = double(i) / (P - 1);
        for (int j = 0; j < n; ++j) nodes[i].values[j] = s * e.values[j];
    }

    auto path_energies = [&](std::vector<double>& es) {
        es.resize(P);
        for (int i = 0; i < P; ++i) es[i] = energy_of(ctx, nodes[i], which);
    };
    auto equidistribute = [&]() {
        // Arclength in the working norm, piecewise-linear resampling.
        std::vector<double> cum(P, 0.0);
        for (int i = 1; i < P; ++i) {
            Field d(ctx.grid());
            for (int j = 0; j < n; ++j) d.values[j] = nodes[i].values[j] - nodes[i - 1].values[j];
            cum[i] = cum[i - 1] + std::sqrt(std::max(0.0, v_norm_sq(ctx, d)));
        }
        if (cum[P - 1] <= 0.0) return;
        std::vector<Field> fresh(P, Field(ctx.grid()));
        fresh[0] = nodes[0];
        fresh[P - 1] = nodes[P - 1];
        for (int i = 1; i < P - 1; ++i) {
            const double target = cum[P - 1] * double(i) / (P - 1);
            int seg = 1;
            while (seg < P - 1 && cum[seg] < target) ++seg;
            const double denom = std::max(cum[seg] - cum[seg - 1], 1e-300);
            const double w = (target - cum[seg - 1]) / denom;
            for (int j = 0; j < n; ++j)
                fresh[i].values[j] =
                    (1.0 - w) * nodes[seg - 1].values[j] + w * nodes[seg].values[j];
        }
        nodes = std::move(fresh);
    };

    SolveReport rep;
    std::vector<double> es;
    double prev_level = std::numeric_limits<double>::infinity();
    double rise_start = 0.0;
    int rises = 0;
    double tau = 1.0;
    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        path_energies(es);
        int m = 1;
        for (int i = 1; i < P - 1; ++i)
            if (es[i] > es[m]) m = i;  // ties resolve to the smallest index
        const double level = es[m];
        rep.history.emplace_back(level, 0.0);
        rep.iterations = sweep + 1;

        // Re-equidistribution refines the discrete crest upward by
        // O(spacing^2); a stall is three consecutive rises that add up to
        // more than that sampling effect can explain.
        if (level > prev_level) {
            if (rises == 0) rise_start = prev_level;
            ++rises;
            if (rises >= 3 && level - rise_start > 0.05 * std::max(1.0, std::abs(level)))
                throw DeformationStallError("mountain_pass: level rose over three sweeps");
        } else {
            rises = 0;
        }
        prev_level = level;

        GradientReport gr = gradient(ctx, nodes[m], which);
        rep.history.back().second = gr.dual_norm;
        rep.mp_level = level;
        rep.solution = nodes[m];
        rep.energy = level;
        rep.dual_norm = gr.dual_norm;
        if (gr.dual_norm <= opts.mp_tol_dual) {
            converged = true;
            break;
        }

        // Push the crest node along the gradient component perpendicular to
        // the path tangent: the tangential part only slides the node along
        // the ridge, and an unprojected push tunnels it under the wall.
        Field push = gr.gradient;
        {
            Field tang(ctx.grid());
            for (int j = 0; j < n; ++j)
                tang.values[j] = nodes[m + 1].values[j] - nodes[m - 1].values[j];
            const double tn2 = v_norm_sq(ctx, tang);
            if (tn2 > 0.0) {
                const double proj = inner_v(ctx, gr.gradient, tang) / tn2;
                for (int j = 0; j < n; ++j) push.values[j] -= proj * tang.values[j];
            }
            const double pn = std::sqrt(std::max(0.0, v_norm_sq(ctx, push)));
            // Degenerate near-tangential gradient: fall back to the full push.
            if (pn < 1e-3 * gr.dual_norm) push = gr.gradient;
        }
        // Never drop the node below its path neighbors: the segment through
        // the wall would go unsampled and the discrete level collapses.
        const double floor_level = std::max(es[m - 1], es[m + 1]);
        const double band = (es[m] - floor_level) + 1e-2 * std::max(1.0, std::abs(level));
        bool accepted = false;
        double trial = tau;
        for (int ls = 0; ls < 40 && !accepted; ++ls) {
            try {
                Field cand = axpy(nodes[m], -trial, push);
                const double e1 = energy_of(ctx, cand, which);
                if (e1 < es[m] && e1 >= floor_level - band) {
                    nodes[m] = cand;
                    tau = std::min(trial * 1.4, 4.0);
                    accepted = true;
                } else {
                    trial *= 0.5;
                }
            } catch (const MagnitudeError&) {
                trial *= 0.25;
            }
        }
        if (!accepted) {
            rep.notes += "push stalled at the saddle resolution; ";
            break;
        }
        equidistribute();
    }
    if (!converged && rep.notes.empty())
        rep.notes += "sweep budget exhausted; level is a one-sided upper bound; ";
    rep.weak_res = weak_residual(ctx, rep.solution, which);
    rep.norm_limit = std::sqrt(v_norm_sq(ctx, rep.solution));
    rep.min_value = rep.solution.min_value();
    return rep;
}

double lions_exponent(double norm_w0_sq) {
    if (!(norm_w0_sq >= 0.0 && norm_w0_sq < 1.0))
        throw DomainError("lions_exponent: argument must lie in [0, 1)");
    return 1.0 / (1.0 - norm_w0_sq);
}

}  // namespace fracmp
