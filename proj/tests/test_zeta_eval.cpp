#include "doctest.h"

#include <cmath>
#include <complex>

#include "reference_values.hpp"
#include "zetalab/zeta_eval.hpp"

using namespace zetalab;
using cplx = std::complex<double>;

namespace {

const ZeroTable& table_1150() {
    static ZeroTable t = find_zeros(0.0, 1150.0, 0.05);
    return t;
}

} // namespace

TEST_CASE("digamma reference values and recurrence") {
    CHECK(digamma(cplx(1.0, 0.0)).real() ==
          doctest::Approx(testref::kDigamma1).epsilon(1e-14));
    CHECK(digamma(cplx(0.5, 0.0)).real() ==
          doctest::Approx(testref::kDigammaHalf).epsilon(1e-14));
    cplx d34 = digamma(cplx(3.0, 4.0));
    CHECK(std::abs(d34 - cplx(testref::kDigamma34Re, testref::kDigamma34Im)) < 1e-13);
    // psi(z+1) - psi(z) = 1/z at z = 3+4i
    cplx z(3.0, 4.0);
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-13);
    CHECK_THROWS_AS(digamma(cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(digamma(cplx(-3.0, 0.0)), PoleError);
}

TEST_CASE("log_deriv_zeta at s=2 matches the Dirichlet-series oracle") {
    LogDerivContext ctx(table_1150(), 1000.0);
    cplx v = log_deriv_zeta(cplx(2.0, 0.0), ctx);
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(v.real() == doctest::Approx(testref::kZpz2).epsilon(2e-4));
}

TEST_CASE("log_deriv_zeta conjugate symmetry and external value") {
    LogDerivContext ctx(table_1150(), 300.0);
    cplx s(0.6, 50.0);
    cplx v = log_deriv_zeta(s, ctx);
    cplx vbar = log_deriv_zeta(std::conj(s), ctx);
    CHECK(std::abs(vbar - std::conj(v)) < 1e-12);
    CHECK(std::abs(v - cplx(testref::kZpz06_50Re, testref::kZpz06_50Im)) < 2e-3);
}

TEST_CASE("log_deriv_zeta single-pole dominance near the first zero") {
    double g1 = table_1150().ordinates()[0];
    LogDerivContext ctx(table_1150(), 50.0);
    cplx v = log_deriv_zeta(cplx(0.51, g1), ctx);
    CHECK(v.real() == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("log_deriv_zeta domain checks") {
    LogDerivContext ctx(table_1150(), 50.0);
    CHECK_THROWS_AS(log_deriv_zeta(cplx(0.4, 10.0), ctx), std::invalid_argument);
    CHECK_THROWS_AS(log_deriv_zeta(cplx(0.6, 1140.0), ctx), RangeError);
}

TEST_CASE("sigma_a on toy tables") {
    double g1 = 14.134725142;
    ZeroTable toy({g1}, 1e7, ZeroSource::loaded);
    ShiftParam a{0.1, 0.0};
    SigmaOptions drop;
    drop.tail = TailModel::drop;
    drop.window = 1000.0;
    double v = sigma_a(g1, a, toy, drop);
    double expect = 1.0 / (0.01) + 1.0 / (0.01 + 4.0 * g1 * g1);
    CHECK(v == doctest::Approx(expect).epsilon(1e-14));
    CHECK(expect == doctest::Approx(100.001251).epsilon(1e-8));

    // symmetric pair {-g, g} realized through the reflection completion
    double g = 3.0;
    ZeroTable toy2({g}, 1e7, ZeroSource::loaded);
    double v0 = sigma_a(0.0, ShiftParam{0.5, 0.0}, toy2, drop);
    CHECK(v0 == doctest::Approx(2.0 / (0.25 + 9.0)).epsilon(1e-14));

    // reflection-completed sum is even in t by construction: the evaluation
    // at t equals the two-sided brute force
    for (double t : {0.0, 1.0, 2.5}) {
        double direct = sigma_a(t, ShiftParam{0.5, 0.0}, toy2, drop);
        double brute = 1.0 / (0.25 + (t - g) * (t - g)) + 1.0 / (0.25 + (t + g) * (t + g));
        CHECK(direct == doctest::Approx(brute).epsilon(1e-14));
    }
}

TEST_CASE("sigma_a bound, window self-consistency, table edge") {
    const ZeroTable& tbl = table_1150();
    ShiftParam a = ShiftParam::from_a(1.0 / std::log(1000.0), 1000.0);
    SigmaOptions opt;
    double worst_c = 0.0;
    for (double t = 20.0; t <= 900.0; t += 37.0) {
        double s = sigma_a(t, a, tbl, opt);
        worst_c = std::max(worst_c, s * a.a * a.a / std::log(t + 2.0));
    }
    CHECK(worst_c < 2.0); // documented constant for the Sigma_a sup bound

    // doubling the window moves the value by less than the declared budget
    SigmaOptions w1, w2;
    w1.window = 60.0;
    w2.window = 120.0;
    for (double t : {200.0, 500.0, 800.0}) {
        double d = std::abs(sigma_a(t, a, tbl, w1) - sigma_a(t, a, tbl, w2));
        CHECK(d < sigma_tail_budget(t, 60.0));
    }

    CHECK_THROWS_AS(sigma_a(1149.0, a, tbl, w1), RangeError);
}

TEST_CASE("SigmaEvaluator sweep path equals the one-shot path") {
    const ZeroTable& tbl = table_1150();
    ShiftParam a = ShiftParam::from_a(0.1, 1000.0);
    SigmaOptions opt;
    SigmaEvaluator ev(tbl, a, 50.0, 900.0, opt);
    for (double t = 57.0; t < 900.0; t += 93.7) {
        CHECK(ev(t) == doctest::Approx(sigma_a(t, a, tbl, opt)).epsilon(1e-9));
    }
}

TEST_CASE("LogDerivEvaluator sweep path equals the one-shot path") {
    const ZeroTable& tbl = table_1150();
    LogDerivContext ctx(tbl, 60.0);
    LogDerivEvaluator ev(ctx, 0.6, 0.0, 1000.0);
    // the interpolated tail is good to ~1e-6 absolute, orders of magnitude
    // below the truncation budget of every consumer
    for (double t = 3.0; t < 1000.0; t += 111.7) {
        cplx a = ev(t);
        cplx b = log_deriv_zeta(cplx(0.6, t), ctx);
        CHECK(std::abs(a - b) < 2e-6 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("re_logderiv_via_sigma agrees with the direct real part") {
    const ZeroTable& tbl = table_1150();
    double T = 1000.0;
    ShiftParam a = ShiftParam::from_a(1.0 / std::log(T), T);
    SigmaOptions opt;
    LogDerivContext ctx(tbl, opt.effective_window(a.a));

    double t = 1000.0;
    double via = re_logderiv_via_sigma(t, a, tbl, opt);
    double direct = log_deriv_zeta(cplx(0.5 + a.a, t), ctx).real();
    CHECK(std::abs(via - direct) < 0.05);

    // residual envelope over a 200-point grid in [100, 1000]
    LogDerivEvaluator ev(ctx, 0.5 + a.a, 100.0, 1000.0);
    SigmaEvaluator sev(tbl, a, 100.0, 1000.0, opt);
    for (int i = 0; i < 200; ++i) {
        double tt = 100.0 + (1000.0 - 100.0) * i / 199.0;
        double v = -0.5 * std::log(tt / kTwoPi) + a.a * sev(tt);
        double d = ev(tt).real();
        double budget = 10.0 / (tt + 1.0) + a.a * sigma_tail_budget(tt, sev.window());
        CHECK(std::abs(v - d) <= budget);
    }

    // first term alone at t = 2 pi e
    CHECK(-0.5 * std::log(kTwoPi * std::exp(1.0) / kTwoPi) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(re_logderiv_via_sigma(5.0, a, tbl, opt), std::invalid_argument);
}

TEST_CASE("lemma2_diagnostic ratios stay below the configured constant") {
    const ZeroTable& tbl = table_1150();
    LogDerivContext ctx(tbl, 50.0);
    double T = 1000.0;
    double r1 = lemma2_diagnostic(0.6, T, 1, ctx);
    CHECK(r1 < 10.0);
    double sig = 0.5 + 1.0 / std::log(T);
    double r3 = lemma2_diagnostic(sig, T, 3, ctx);
    CHECK(r3 < 10.0);
    // bound algebra at n=2, sigma = 1/2 + 1/L: L^2 / (1/L) = L^3
    double L = std::log(T);
    CHECK(std::pow(L, 2) / std::pow(sig - 0.5, 1) == doctest::Approx(L * L * L));
    CHECK_THROWS_AS(lemma2_diagnostic(0.9, T, 1, ctx), RangeError);
}
