#include <doctest.h>

#include <cmath>

#include "fracmp/errors.hpp"
#include "fracmp/model.hpp"
#include "fracmp/quadrature.hpp"

using namespace fracmp;

namespace {

// Closed-form primitive of t^3 e^{t^2}.
double H_cubic(double t) { return 0.5 * (1.0 + (t * t - 1.0) * std::exp(t * t)); }

NonlinearitySpec cubic_h() {
    NonlinearitySpec s;
    s.mode = NonlinearityMode::H;
    s.p = 3.0;
    s.mu = 4.0;
    return s;
}

}  // namespace

TEST_CASE("growth function vanishes for nonpositive arguments") {
    auto s = cubic_h();
    CHECK(eval_h(s, 0.0) == 0.0);
    CHECK(eval_h(s, -1.0) == 0.0);
    CHECK(eval_H(s, 0.0) == 0.0);
    CHECK(eval_H(s, -3.7) == 0.0);
}

TEST_CASE("cubic prototype hits the closed form") {
    auto s = cubic_h();
    CHECK(eval_h(s, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(eval_H(s, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    // Quadrature against the antiderivative across a range of arguments.
    for (double t : {0.2, 0.7, 1.3, 2.4, 3.9, 6.0, 10.0}) {
        const double q = eval_H(s, t);
        const double c = H_cubic(t);
        CHECK(std::abs(q - c) < 1e-10 * c);
    }
}

TEST_CASE("primitive is nonnegative and nondecreasing") {
    auto s = cubic_h();
    s.beta = 1.0;  // variant t^p (e^{t^beta} - 1) e^{t^2}
    double prev = 0.0;
    for (double t = 0.05; t < 8.0; t += 0.17) {
        const double v = eval_H(s, t);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("overflow guard fires instead of returning Inf") {
    auto s = cubic_h();
    CHECK_THROWS_AS(eval_h(s, 27.0), MagnitudeError);
    CHECK_THROWS_AS(eval_H(s, 27.0), MagnitudeError);
    try {
        eval_h(s, 28.5);
    } catch (const MagnitudeError& e) {
        CHECK(e.offending_t == 28.5);
    }
}

TEST_CASE("Kirchhoff function and primitive") {
    KirchhoffSpec constant{1.0, 0.0, 0.0, 0.0, 1.0};
    CHECK(eval_m(constant, M_PI) == 1.0);
    CHECK(eval_M(constant, M_PI) == doctest::Approx(M_PI).epsilon(1e-15));

    KirchhoffSpec linear{1.0, 1.0, 0.0, 0.0, 1.0};
    CHECK(eval_m(linear, 2.0) == 3.0);
    CHECK(eval_M(linear, 2.0) == 4.0);

    CHECK_THROWS_AS(eval_m(linear, -0.1), DomainError);
    CHECK_THROWS_AS(eval_M(linear, -0.1), DomainError);
}

TEST_CASE("half-primitive minus quarter-slope identity for linear m") {
    // M(t)/2 - m(t) t / 4 = m0 t / 4 exactly when m is linear.
    KirchhoffSpec ks{1.0, 2.0, 0.0, 0.0, 1.0};
    CHECK(0.5 * eval_M(ks, 5.0) - 0.25 * eval_m(ks, 5.0) * 5.0 ==
          doctest::Approx(1.25).epsilon(1e-15));
    for (double t = 0.0; t <= 64.0; t += 0.5) {
        const double lhs = 0.5 * eval_M(ks, t) - 0.25 * eval_m(ks, t) * t;
        const double rhs = 0.25 * ks.m0 * t;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("catalog models pass their claimed conditions") {
    for (const auto& m : catalog()) {
        const ValidationReport rep = validate_assumptions(m);
        INFO("model ", m.name);
        for (const auto& c : rep.checks) {
            INFO("check ", c.name, " margin ", c.worst_margin, " at ", c.location);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass());
    }
}

TEST_CASE("cubic prototype satisfies the superquadratic bound with mu = 4") {
    // t h(t) - 4 H(t) = t^4 e^{t^2} - 4 H(t); at t = 1 this equals e - 2.
    auto s = cubic_h();
    const double gap1 = 1.0 * eval_h(s, 1.0) - 4.0 * eval_H(s, 1.0);
    CHECK(gap1 == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-12));

    ModelSpec m = catalog_model("p-cubic");
    const auto* ar = validate_assumptions(m).find("h2.ar");
    REQUIRE(ar != nullptr);
    CHECK(ar->pass);
}

TEST_CASE("superadditivity of the linear Kirchhoff primitive") {
    // M(t+s) - M(t) - M(s) = a t s >= 0.
    KirchhoffSpec ks{1.0, 1.0, 0.0, 0.0, 1.0};
    for (double t : {0.1, 1.0, 7.0})
        for (double s : {0.4, 2.5}) {
            const double d = eval_M(ks, t + s) - eval_M(ks, t) - eval_M(ks, s);
            CHECK(d == doctest::Approx(ks.a * t * s).epsilon(1e-13));
        }
    ModelSpec m = catalog_model("q-quartic");
    const auto* c = validate_assumptions(m).find("m1.superadditive");
    REQUIRE(c != nullptr);
    CHECK(c->pass);
}

TEST_CASE("validator catches the inconsistent exponent pair") {
    // f(t)/t^theta with theta = 3.5 and p = 3 decreases near zero, so the
    // monotonicity condition must fail with a located violation.
    ModelSpec broken;
    broken.name = "broken";
    broken.potential = {PotentialKind::Polynomial, 1.0, 2.0};
    broken.nonlinearity.mode = NonlinearityMode::F;
    broken.nonlinearity.p = 3.0;
    broken.nonlinearity.theta = 3.5;
    const ValidationReport rep = validate_assumptions(broken);
    CHECK_FALSE(rep.all_pass());
    const auto* mono = rep.find("f1.monotone");
    REQUIRE(mono != nullptr);
    CHECK_FALSE(mono->pass);
    CHECK(mono->worst_margin < 0.0);
    CHECK(mono->location > 0.0);
    CHECK(mono->location < 0.5);  // violation lives near the origin
}

TEST_CASE("validator determines the primitive-domination constants") {
    ModelSpec m = catalog_model("p-cubic");
    const ValidationReport rep = validate_assumptions(m);
    // Brute-force oracle: the empirical max of H/h over [t0, t_max] plus 10%.
    double ratio_max = 0.0;
    for (double t = 1.0; t <= 12.0; t += 1e-3)
        ratio_max = std::max(ratio_max, H_cubic(t) / eval_h(m.nonlinearity, t));
    CHECK(rep.m_h_determined == doctest::Approx(1.1 * ratio_max).epsilon(1e-3));
    // The determined constant dominates everywhere on the range.
    for (double t = 1.0; t <= 12.0; t += 0.05)
        CHECK(H_cubic(t) <= rep.m_h_determined * eval_h(m.nonlinearity, t));

    ModelSpec q = catalog_model("q-quartic");
    CHECK(validate_assumptions(q).k0_determined > 0.0);
}

TEST_CASE("model-level validation aggregates violations") {
    ModelSpec bad;
    bad.potential = {PotentialKind::Polynomial, -1.0, 2.0};
    bad.nonlinearity.p = 0.5;
    bad.nonlinearity.t0 = -1.0;
    try {
        bad.validate();
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() >= 3);
    }
}
