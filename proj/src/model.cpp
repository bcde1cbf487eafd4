#include "fracmp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracmp/errors.hpp"
#include "fracmp/quadrature.hpp"

namespace fracmp {

double PotentialSpec::operator()(double x) const {
    if (kind == PotentialKind::Constant) return v0;
    return std::pow(std::abs(x), exponent) + v0;
}

void PotentialSpec::validate(std::vector<std::string>& out) const {
    if (!(v0 > 0.0)) out.push_back("potential: V0 must be positive");
    if (kind == PotentialKind::Polynomial && !(exponent > 0.0))
        out.push_back("potential: exponent must be positive for the polynomial kind");
}

void NonlinearitySpec::validate(std::vector<std::string>& out) const {
    if (!(p > 1.0)) out.push_back("nonlinearity: p must exceed 1");
    if (beta && !(*beta > 0.0 && *beta < 2.0))
        out.push_back("nonlinearity: beta must lie in (0, 2)");
    if (mode == NonlinearityMode::H && !(ar_exponent() > 2.0))
        out.push_back("nonlinearity: mu must exceed 2");
    if (mode == NonlinearityMode::F && !(theta_exponent() > 3.0))
        out.push_back("nonlinearity: theta must exceed 3");
    if (!(t0 > 0.0)) out.push_back("nonlinearity: t0 must be positive");
}

void KirchhoffSpec::validate(std::vector<std::string>& out) const {
    if (!(m0 > 0.0)) out.push_back("kirchhoff: m0 must be positive");
    if (a < 0.0) out.push_back("kirchhoff: slope a must be nonnegative");
}

void ModelSpec::validate() const {
    std::vector<std::string> v;
    potential.validate(v);
    nonlinearity.validate(v);
    if (kirchhoff) kirchhoff->validate(v);
    if (!v.empty()) throw ConfigError(std::move(v));
}

double eval_h(const NonlinearitySpec& spec, double t) {
    if (t <= 0.0) return 0.0;
    if (t * t > kOverflowGuardTSq)
        throw MagnitudeError("eval_h: argument past overflow guard", t);
    const double base = std::pow(t, spec.p) * std::exp(t * t);
    if (!spec.beta) return base;
    return base * std::expm1(std::pow(t, *spec.beta));
}

double eval_H(const NonlinearitySpec& spec, double t) {
    if (t <= 0.0) return 0.0;
    if (t * t > kOverflowGuardTSq)
        throw MagnitudeError("eval_H: argument past overflow guard", t);
    auto h = [&](double s) { return eval_h(spec, s); };
    QuadResult q = gk15_panel(h, 0.0, t);
    if (q.error <= 1e-13 * q.value) return q.value;
    return integrate_adaptive(h, 0.0, t, 1e-300, 1e-13, 4000).value;
}

double eval_m(const KirchhoffSpec& spec, double t) {
    if (t < 0.0) throw DomainError("eval_m: negative argument");
    return spec.m0 + spec.a * t;
}

double eval_M(const KirchhoffSpec& spec, double t) {
    if (t < 0.0) throw DomainError("eval_M: negative argument");
    return spec.m0 * t + 0.5 * spec.a * t * t;
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const ConditionCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    std::vector<double> t;
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(decades * per_decade));
    for (int i = 0; i <= n; ++i) t.push_back(lo * std::pow(hi / lo, double(i) / n));
    return t;
}

// Track the worst (most negative) normalized margin together with where it
// occurred.
struct WorstMargin {
    double margin = std::numeric_limits<double>::infinity();
    double at = 0.0;
    void observe(double m, double t) {
        if (m < margin) {
            margin = m;
            at = t;
        }
    }
};

}  // namespace

ValidationReport validate_assumptions(const ModelSpec& model, const ValidationOptions& opts) {
    const NonlinearitySpec& nl = model.nonlinearity;
    const bool fmode = nl.mode == NonlinearityMode::F;
    ValidationReport rep;
    rep.t_max = opts.t_max;
    rep.lambda1_used = opts.lambda1.value_or(model.potential.v0);

    const double t_min = 1e-3;
    const std::vector<double> ts = log_grid(t_min, opts.t_max, opts.points_per_decade);
    std::vector<double> hs(ts.size()), Hs(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        hs[i] = eval_h(nl, ts[i]);
        Hs[i] = eval_H(nl, ts[i]);
    }

    auto push = [&rep](std::string name, bool pass, double margin, double at, std::string note) {
        rep.checks.push_back({std::move(name), pass, margin, at, std::move(note)});
    };

    // (h1)/(f1) sign structure: vanishing for t <= 0, positive for t > 0.
    {
        WorstMargin w;
        bool ok = eval_h(nl, 0.0) == 0.0 && eval_h(nl, -1.0) == 0.0 && eval_H(nl, -2.5) == 0.0;
        for (size_t i = 0; i < ts.size(); ++i) w.observe(hs[i], ts[i]);
        ok = ok && w.margin > 0.0;
        push(fmode ? "f1.sign" : "h1.sign", ok, w.margin, w.at,
             "h(t)=0 for t<=0, h(t)>0 for t>0");
    }

    // (h1)/(f1) subcritical tail: h(t) e^{-(1+eps) t^2} decreasing over the
    // top octave of the grid.  A finite grid cannot see the limit itself;
    // eps = 1 keeps the turnover point of the prototypes inside the window.
    {
        const double eps = 1.0;
        WorstMargin w;
        bool ok = true;
        for (size_t i = 1; i < ts.size(); ++i) {
            if (ts[i] < opts.t_max / 2.0) continue;
            const double gi = std::log(hs[i]) - (1 + eps) * ts[i] * ts[i];
            const double gp = std::log(hs[i - 1]) - (1 + eps) * ts[i - 1] * ts[i - 1];
            const double m = gp - gi;  // positive when decreasing
            w.observe(m, ts[i]);
            ok = ok && m > 0.0;
        }
        push(fmode ? "f1.growth" : "h1.growth", ok, w.margin, w.at,
             "h(t) e^{-(1+eps) t^2} decreasing over the top octave, eps=1");
    }

    if (!fmode) {
        // (h2) Ambrosetti-Rabinowitz: 0 <= mu H(t) <= t h(t).
        const double mu = nl.ar_exponent();
        WorstMargin w;
        bool ok = true;
        for (size_t i = 0; i < ts.size(); ++i) {
            const double lhs = mu * Hs[i];
            const double rhs = ts[i] * hs[i];
            const double m = (rhs - lhs) / std::max(rhs, 1e-300);
            w.observe(m, ts[i]);
            ok = ok && lhs >= 0.0 && m >= -1e-12;
        }
        push("h2.ar", ok, w.margin, w.at, "0 <= mu H(t) <= t h(t), mu=" + std::to_string(mu));

        // (h5) small-argument bound: 2H(u)/u^2 below lambda_1 near zero.
        WorstMargin w5;
        bool ok5 = true;
        for (size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] > 10.0 * t_min) continue;
            const double q = 2.0 * Hs[i] / (ts[i] * ts[i]);
            const double m = (rep.lambda1_used - q) / rep.lambda1_used;
            w5.observe(m, ts[i]);
            ok5 = ok5 && m > 0.0;
        }
        push("h5.subeigen", ok5, w5.margin, w5.at, "2H(u)/u^2 < lambda_1 on the bottom decade");
    } else {
        // (f1) f(t)/t^theta increasing on (0, inf).
        const double th = nl.theta_exponent();
        WorstMargin w;
        bool ok = true;
        for (size_t i = 1; i < ts.size(); ++i) {
            const double gi = std::log(hs[i]) - th * std::log(ts[i]);
            const double gp = std::log(hs[i - 1]) - th * std::log(ts[i - 1]);
            const double m = gi - gp;  // positive when increasing
            w.observe(m, ts[i]);
            ok = ok && m >= -1e-12;
        }
        push("f1.monotone", ok, w.margin, w.at,
             "f(t)/t^theta increasing, theta=" + std::to_string(th));

        // (f1) cubic vanishing at zero: f(t)/t^3 decreasing toward 0 on the
        // bottom decade and small at the left endpoint.
        WorstMargin wc;
        bool okc = true;
        double left = hs[0] / (ts[0] * ts[0] * ts[0]);
        for (size_t i = 1; i < ts.size(); ++i) {
            if (ts[i] > 10.0 * t_min) continue;
            const double gi = hs[i] / (ts[i] * ts[i] * ts[i]);
            const double gp = hs[i - 1] / (ts[i - 1] * ts[i - 1] * ts[i - 1]);
            wc.observe(gi - gp, ts[i]);
            okc = okc && gi >= gp;
        }
        okc = okc && left < 0.1;
        push("f1.cubic_origin", okc, wc.margin, wc.at, "f(t)/t^3 -> 0 as t -> 0");

        // Increasing difference: s f(s) - 4 F(s) nondecreasing, hence >= 0.
        WorstMargin wd;
        bool okd = true;
        double prev = 0.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            const double d = ts[i] * hs[i] - 4.0 * Hs[i];
            const double m = (d - prev) / std::max(std::abs(d) + std::abs(prev), 1e-300);
            wd.observe(m, ts[i]);
            okd = okd && d >= -1e-12 && m >= -1e-12;
            prev = d;
        }
        push("f.diff4_increasing", okd, wd.margin, wd.at, "s f(s) - 4 F(s) increasing, >= 0");
    }

    // (h3)/(f2) primitive domination on [t0, t_max]; the constant is the
    // empirical maximum of H/h plus a 10% margin when not pinned.
    {
        double ratio_max = 0.0, at = nl.t0;
        for (size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] < nl.t0) continue;
            const double r = Hs[i] / hs[i];
            if (r > ratio_max) {
                ratio_max = r;
                at = ts[i];
            }
        }
        const double determined = 1.1 * ratio_max;
        if (fmode)
            rep.k0_determined = nl.k0 > 0.0 ? nl.k0 : determined;
        else
            rep.m_h_determined = nl.m_h > 0.0 ? nl.m_h : determined;
        const double bound = fmode ? rep.k0_determined : rep.m_h_determined;
        const bool ok = ratio_max <= bound;
        push(fmode ? "f2.primitive_bound" : "h3.primitive_bound", ok,
             (bound - ratio_max) / bound, at,
             "H(t) <= C h(t) on [t0, t_max], C=" + std::to_string(bound));
    }

    // (h4)/(f3) super-exponential product: t h(t) e^{-t^2} increasing over
    // the top decade of the grid (finite-grid reading of the limit).
    {
        WorstMargin w;
        bool ok = true;
        for (size_t i = 1; i < ts.size(); ++i) {
            if (ts[i] < opts.t_max / 10.0) continue;
            const double gi = std::log(ts[i] * hs[i]) - ts[i] * ts[i];
            const double gp = std::log(ts[i - 1] * hs[i - 1]) - ts[i - 1] * ts[i - 1];
            const double m = gi - gp;
            w.observe(m, ts[i]);
            ok = ok && m > 0.0;
        }
        push(fmode ? "f3.product_growth" : "h4.product_growth", ok, w.margin, w.at,
             "t h(t) e^{-t^2} increasing over the top decade");
    }

    // Potential assumption (V).
    {
        WorstMargin w;
        bool ok = true;
        for (double x : log_grid(1e-3, 100.0, 12)) {
            const double m = (model.potential(x) - model.potential.v0) / model.potential.v0;
            w.observe(m, x);
            ok = ok && m >= -1e-15;
        }
        if (model.potential.kind == PotentialKind::Polynomial)
            ok = ok && model.potential(100.0) > model.potential(10.0);
        push("V.lower_bound", ok, w.margin, w.at, "V(x) >= V0 > 0; polynomial kind coercive");
    }

    if (model.kirchhoff) {
        const KirchhoffSpec& ks = *model.kirchhoff;
        const std::vector<double> us = log_grid(1e-3, 100.0, 12);

        // (m1) lower bound and superadditivity of the primitive.
        {
            WorstMargin w;
            bool ok = true;
            for (double t : us) {
                const double m = (eval_m(ks, t) - ks.m0) / ks.m0;
                w.observe(m, t);
                ok = ok && m >= -1e-15;
            }
            for (double t : {0.1, 1.0, 5.0, 20.0})
                for (double s : {0.2, 2.0, 10.0}) {
                    const double d = eval_M(ks, t + s) - eval_M(ks, t) - eval_M(ks, s);
                    const double m = d / std::max(eval_M(ks, t + s), 1e-300);
                    w.observe(m, t);
                    ok = ok && m >= -1e-14;
                }
            push("m1.superadditive", ok, w.margin, w.at, "m >= m0; M(t+s) >= M(t) + M(s)");
        }

        // (m2) growth bound m(t) <= a1 + a2 t^sigma on [t0, t_max-scale].
        {
            const double a1 = ks.a1 > 0.0 ? ks.a1 : ks.m0;
            const double a2 = ks.a2 > 0.0 ? ks.a2 : std::max(ks.a, 1.0);
            WorstMargin w;
            bool ok = true;
            for (double t : us) {
                if (t < nl.t0) continue;
                const double bound = a1 + a2 * std::pow(t, ks.sigma);
                const double m = (bound - eval_m(ks, t)) / bound;
                w.observe(m, t);
                ok = ok && m >= -1e-14;
            }
            push("m2.growth_bound", ok, w.margin, w.at, "m(t) <= a1 + a2 t^sigma for t >= t0");
        }

        // (m3) m(t)/t strictly decreasing.
        {
            WorstMargin w;
            bool ok = true;
            for (size_t i = 1; i < us.size(); ++i) {
                const double gi = eval_m(ks, us[i]) / us[i];
                const double gp = eval_m(ks, us[i - 1]) / us[i - 1];
                const double m = (gp - gi) / gp;
                w.observe(m, us[i]);
                ok = ok && m > 0.0;
            }
            push("m3.decreasing", ok, w.margin, w.at, "m(t)/t strictly decreasing");
        }

        // Primitive identity M(t)/2 - m(t) t / 4 >= 0.
        {
            WorstMargin w;
            bool ok = true;
            for (double t : us) {
                const double d = 0.5 * eval_M(ks, t) - 0.25 * eval_m(ks, t) * t;
                const double m = d / std::max(0.5 * eval_M(ks, t), 1e-300);
                w.observe(m, t);
                ok = ok && m >= -1e-14;
            }
            push("m.halfM_quarter_mt", ok, w.margin, w.at, "M(t)/2 - m(t) t/4 >= 0");
        }
    }

    return rep;
}

std::vector<ModelSpec> catalog() {
    std::vector<ModelSpec> models;
    {
        ModelSpec m;
        m.name = "p-cubic";
        m.potential = {PotentialKind::Polynomial, 1.0, 2.0};
        m.nonlinearity.mode = NonlinearityMode::H;
        m.nonlinearity.p = 3.0;
        m.nonlinearity.mu = 4.0;
        models.push_back(m);
    }
    {
        ModelSpec m;
        m.name = "p-cubic-beta";
        m.potential = {PotentialKind::Polynomial, 1.0, 2.0};
        m.nonlinearity.mode = NonlinearityMode::H;
        m.nonlinearity.p = 3.0;
        m.nonlinearity.beta = 1.0;
        m.nonlinearity.mu = 4.0;
        models.push_back(m);
    }
    {
        ModelSpec m;
        m.name = "q-quartic";
        m.potential = {PotentialKind::Polynomial, 1.0, 2.0};
        m.nonlinearity.mode = NonlinearityMode::F;
        m.nonlinearity.p = 4.0;
        m.kirchhoff = KirchhoffSpec{1.0, 1.0, 0.0, 0.0, 1.0};
        models.push_back(m);
    }
    {
        ModelSpec m;
        m.name = "q-quartic-constm";
        m.potential = {PotentialKind::Polynomial, 1.0, 2.0};
        m.nonlinearity.mode = NonlinearityMode::F;
        m.nonlinearity.p = 4.0;
        m.kirchhoff = KirchhoffSpec{1.0, 0.0, 0.0, 0.0, 1.0};
        models.push_back(m);
    }
    {
        ModelSpec m;
        m.name = "p-quartic";
        m.potential = {PotentialKind::Polynomial, 1.0, 2.0};
        m.nonlinearity.mode = NonlinearityMode::H;
        m.nonlinearity.p = 4.0;
        m.nonlinearity.mu = 5.0;
        models.push_back(m);
    }
    return models;
}

ModelSpec catalog_model(const std::string& name) {
    for (auto& m : catalog())
        if (m.name == name) return m;
    throw DomainError("catalog_model: unknown model '" + name + "'");
}

}  // namespace fracmp
