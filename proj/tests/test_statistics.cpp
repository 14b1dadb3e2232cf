#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "zetalab/rng.hpp"
#include "zetalab/asymptotics.hpp"
#include "zetalab/gue.hpp"
#include "zetalab/statistics.hpp"

using namespace zetalab;

namespace {

const ZeroTable& table_1150() {
    static ZeroTable t = find_zeros(0.0, 1150.0, 0.05);
    return t;
}

ZeroTable toy_table(std::vector<double> g) {
    double tmax = g.empty() ? 1.0 : g.back() * 2.0 + 100.0;
    return ZeroTable(std::move(g), tmax, ZeroSource::loaded);
}

UnfoldedZeros as_unfolded(std::vector<double> values, double L) {
    UnfoldedZeros u;
    u.values = std::move(values);
    u.L = L;
    u.T = std::exp(L);
    return u;
}

} // namespace

TEST_CASE("symmetrize kills antisymmetric parts and fixes symmetric ones") {
    TestFunction f;
    f.arity = 2;
    f.eval = [](const double* x) { return x[0] - x[1]; };
    TestFunction f0 = symmetrize(f);
    CHECK(f0(1.7, -0.3) == doctest::Approx(0.0).epsilon(1e-15));

    TestFunction g;
    g.arity = 2;
    g.eval = [](const double* x) { return (x[0] - x[1]) * (x[0] - x[1]); };
    TestFunction g0 = symmetrize(g);
    CHECK(g0(1.7, -0.3) == doctest::Approx(g(1.7, -0.3)).epsilon(1e-15));

    // idempotence
    TestFunction g00 = symmetrize(g0);
    CHECK(g00(0.4, 2.2) == doctest::Approx(g0(0.4, 2.2)).epsilon(1e-14));
}

TEST_CASE("symmetrize of k(x-y)k(y-z) with even k collapses to cyclic terms") {
    auto k = [](double d) { return std::exp(-d * d); };
    TestFunction f;
    f.arity = 3;
    f.eval = [k](const double* x) { return k(x[0] - x[1]) * k(x[1] - x[2]); };
    TestFunction f0 = symmetrize(f);
    double x = 0.3, y = -0.8, z = 1.1;
    double cyc = (k(x - y) * k(y - z) + k(y - z) * k(z - x) + k(z - x) * k(x - y)) / 3.0;
    CHECK(f0(x, y, z) == doctest::Approx(cyc).epsilon(1e-14));
}

TEST_CASE("pair_correlation_F on toy tables") {
    ZeroTable one = toy_table({25.0});
    for (double alpha : {0.0, 0.5, 1.3, 2.9})
        CHECK(pair_correlation_F(alpha, one, 30.0) == doctest::Approx(1.0).epsilon(1e-14));

    // evenness in alpha on a real slice
    ZeroTable t = find_zeros(0.0, 200.0, 0.05);
    double fp = pair_correlation_F(0.7, t, 200.0);
    double fm = pair_correlation_F(-0.7, t, 200.0);
    CHECK(fp == doctest::Approx(fm).epsilon(1e-10));
    CHECK_THROWS_AS(pair_correlation_F(3.5, t, 200.0), std::invalid_argument);
    CHECK_THROWS_AS(pair_correlation_F(0.5, t, 500.0), RangeError);
}

TEST_CASE("s_n_sum: two-zero toy and windowed-vs-exhaustive oracle") {
    // two unfolded points at gap d: ordered distinct pairs give 2 exp(-d^2)
    auto f = make_pair_fn([](double d) { return std::exp(-d * d); }, 4.0, 1.0);
    UnfoldedZeros two = as_unfolded({10.0, 10.9}, 7.0);
    CHECK(s_n_sum(f, two) == doctest::Approx(2.0 * std::exp(-0.81)).epsilon(1e-14));

    // 200-zero table: windowed enumeration vs brute force
    ZeroTable t = find_zeros(0.0, 240.0, 0.05);
    REQUIRE(t.count() >= 100);
    UnfoldedZeros u = unfold(t, 240.0);
    SnSumOptions windowed;
    windowed.exhaustive_below = 0; // force the windowed path
    SnSumOptions brute;
    brute.window = -1.0;
    double a = s_n_sum(f, u, windowed);
    double b = s_n_sum(f, u, brute);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));

    TestFunction f3;
    f3.arity = 3;
    f3.decay_exponent = 4.0;
    f3.eval = [](const double* x) {
        double d1 = x[0] - x[1], d2 = x[1] - x[2];
        return std::exp(-d1 * d1 - d2 * d2);
    };
    double a3 = s_n_sum(f3, u, windowed);
    double b3 = s_n_sum(f3, u, brute);
    CHECK(a3 == doctest::Approx(b3).epsilon(1e-9));
}

TEST_CASE("f1/f2 kernel identities") {
    double a = 0.11, L = 9.2;
    // diagonal of the triple kernel
    CHECK(kernel_f1_triple(3.3, 3.3, 3.3, a, L) ==
          doctest::Approx(1.0 / (64.0 * std::pow(a, 6))).epsilon(1e-12));
    CHECK(kernel_f2_triple(1.0, 1.0, 1.0, a, L) ==
          doctest::Approx(1.0 / (16.0 * std::pow(a, 4))).epsilon(1e-12));
    // f2(x,y,x) = f1_pair(x,y)
    CHECK(kernel_f2_triple(2.0, 5.5, 2.0, a, L) ==
          doctest::Approx(kernel_f1_pair(2.0, 5.5, a, L)).epsilon(1e-13));

    // unfolding consistency: F1 at ordinates equals f1 at unfolded ordinates
    Rng rng(42);
    for (int i = 0; i < 20; ++i) {
        double x = 100.0 + 900.0 * rng.uniform();
        double y = x + 4.0 * (rng.uniform() - 0.5);
        double z = x + 4.0 * (rng.uniform() - 0.5);
        double s = L / kTwoPi;
        // F1(g,g',g'') = f1(unfolded ordinates), same for F2 and the pair
        CHECK(kernel_f1_triple(s * x, s * y, s * z, a, L) ==
              doctest::Approx(lemma5_F1(x, y, z, a)).epsilon(1e-11));
        CHECK(kernel_f2_triple(s * x, s * y, s * z, a, L) ==
              doctest::Approx(lemma5_F2(x, y, z, a)).epsilon(1e-11));
        CHECK(kernel_f2_pair(s * x, s * y, a, L) ==
              doctest::Approx(1.0 / (4.0 * a * a + (x - y) * (x - y))).epsilon(1e-11));
    }
}

TEST_CASE("decompose_unrestricted: exhaustive identity on toy tables") {
    double T = 1000.0, L = std::log(T), a = 1.0 / L;

    // 3-zero toy: 27-term brute force agrees (verified inside the call)
    ZeroTable t3 = toy_table({100.0, 101.1, 103.7});
    UnfoldedZeros u3 = unfold(t3, T);
    for (auto kind : {KernelKind::f1, KernelKind::f2}) {
        DecompositionResult r = decompose_unrestricted(kind, u3, a);
        double parts = r.distinct_triple + r.diagonal.first * r.diagonal.second;
        for (auto& [c, v] : r.distinct_pair_terms) parts += c * v;
        CHECK(r.total == doctest::Approx(parts).epsilon(1e-12));
    }

    // 1-zero table: total is the diagonal coefficient alone
    ZeroTable t1 = toy_table({55.5});
    UnfoldedZeros u1 = unfold(t1, T);
    DecompositionResult r1 = decompose_unrestricted(KernelKind::f1, u1, a);
    CHECK(r1.distinct_triple == 0.0);
    CHECK(r1.total == doctest::Approx(1.0 / (64.0 * std::pow(a, 6))).epsilon(1e-12));
    DecompositionResult r2 = decompose_unrestricted(KernelKind::f2, u1, a);
    CHECK(r2.total == doctest::Approx(1.0 / (16.0 * std::pow(a, 4))).epsilon(1e-12));

    // 5 random zeros, both kernels (identity asserted internally at 1e-9;
    // re-check here at 1e-12 via the returned parts)
    Rng rng(7);
    std::vector<double> g;
    double base = 200.0;
    for (int i = 0; i < 5; ++i) {
        base += 0.4 + 2.0 * rng.uniform();
        g.push_back(base);
    }
    UnfoldedZeros u5 = unfold(toy_table(g), T);
    for (auto kind : {KernelKind::f1, KernelKind::f2}) {
        DecompositionResult r = decompose_unrestricted(kind, u5, a);
        KahanSum brute;
        TestFunction trip;
        trip.arity = 3;
        trip.eval = [&](const double* x) {
            return kind == KernelKind::f1 ? kernel_f1_triple(x[0], x[1], x[2], a, L)
                                          : kernel_f2_triple(x[0], x[1], x[2], a, L);
        };
        for (double x : u5.values)
            for (double y : u5.values)
                for (double z : u5.values) {
                    double v[3] = {x, y, z};
                    brute.add(trip.eval(v));
                }
        CHECK(r.total == doctest::Approx(brute.value()).epsilon(1e-12));
    }
}

TEST_CASE("Lorentzian closed forms against adaptive quadrature") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;

    // coincident arguments, a = 1: 3 pi / 8
    double v = lorentzian_triple_integral(5.0, 5.0, 5.0, 1.0);
    CHECK(v == doctest::Approx(3.0 * kPi / 8.0).epsilon(1e-12));
    auto q = integrate_line(
        [](double t) { return std::pow(1.0 + (t - 5.0) * (t - 5.0), -3.0); }, 1.0, spec);
    CHECK(q.converged);
    CHECK(v == doctest::Approx(q.value).epsilon(1e-10));

    // pair with x = y, a = 1: pi/2
    CHECK(lorentzian_pair_integral(2.0, 2.0, 1.0) == doctest::Approx(kPi / 2.0));

    // permutation symmetry of the triple formula
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        double a = 0.05 + 0.95 * rng.uniform();
        double x = 10.0 * rng.uniform();
        double y = x + 20.0 * a * (rng.uniform() - 0.5);
        double z = x + 20.0 * a * (rng.uniform() - 0.5);
        double ref = lorentzian_triple_integral(x, y, z, a);
        CHECK(lorentzian_triple_integral(y, z, x, a) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(lorentzian_triple_integral(z, y, x, a) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(lorentzian_triple_integral(x, z, y, a) == doctest::Approx(ref).epsilon(1e-13));
    }

    // random draws vs quadrature
    for (int i = 0; i < 12; ++i) {
        double a = 0.05 + 0.95 * rng.uniform();
        double x = 5.0 * rng.uniform();
        double y = x + 20.0 * a * (rng.uniform() - 0.5);
        double z = x + 20.0 * a * (rng.uniform() - 0.5);
        double closed = lorentzian_triple_integral(x, y, z, a);
        double mid = (x + y + z) / 3.0;
        auto qr = integrate_line(
            [&](double t) {
                double u = t + mid;
                return 1.0 / ((a * a + (u - x) * (u - x)) * (a * a + (u - y) * (u - y)) *
                              (a * a + (u - z) * (u - z)));
            },
            a, spec);
        CHECK(qr.converged);
        CHECK(closed == doctest::Approx(qr.value).epsilon(1e-8));
    }
}

TEST_CASE("sigma_moment_trick on toy tables") {
    double a = 0.3;
    ShiftParam ap{a, 0.0};

    // single zero, n = 3: exactly 3 pi / (8 a^5)
    ZeroTable t1 = toy_table({50.0});
    double v1 = sigma_moment_trick(3, ap, 100.0, t1, {50.0, false});
    CHECK(v1 == doctest::Approx(3.0 * kPi / (8.0 * std::pow(a, 5))).epsilon(1e-12));

    // two zeros, n = 2: 2 (pi/2a^3) + 2 (2pi/a)/(4a^2+d^2), matches whole-line
    // quadrature of the squared two-Lorentzian sum
    double d = 1.7;
    ZeroTable t2 = toy_table({50.0, 50.0 + d});
    double v2 = sigma_moment_trick(2, ap, 100.0, t2, {50.0, false});
    double expect = 2.0 * (kPi / (2.0 * a * a * a)) + 2.0 * (2.0 * kPi / a) / (4.0 * a * a + d * d);
    CHECK(v2 == doctest::Approx(expect).epsilon(1e-13));
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    auto q = integrate_line(
        [&](double t) {
            double u = t + 50.0;
            double s = 1.0 / (a * a + (u - 50.0) * (u - 50.0)) +
                       1.0 / (a * a + (u - 50.0 - d) * (u - 50.0 - d));
            return s * s;
        },
        a, spec);
    CHECK(q.converged);
    CHECK(v2 == doctest::Approx(q.value).epsilon(1e-8));
}

TEST_CASE("sigma moments: degenerate case, Cauchy-Schwarz, n=1 closed form") {
    const ZeroTable& tbl = table_1150();
    double T = 1000.0;
    ShiftParam a = ShiftParam::from_c(1.0, T);
    SigmaOptions opt;

    CHECK(sigma_moment_direct(0, a, T, tbl, opt) == T);

    double m1 = sigma_moment_direct(1, a, T, tbl, opt);
    double m2 = sigma_moment_direct(2, a, T, tbl, opt);
    double m3 = sigma_moment_direct(3, a, T, tbl, opt);
    CHECK(m2 * m2 <= m1 * m3 * (1.0 + 1e-12));

    // first-moment closed form (1/2a)(T log(T/2pi) - T) with budget
    // O(log^2 T loglog T); the fitted constant is ~1 at this height
    double closed = (T * std::log(T / kTwoPi) - T) / (2.0 * a.a);
    double budget = std::pow(std::log(T), 2.0) * std::log(std::log(T));
    CHECK(std::abs(m1 - closed) < 3.0 * budget);
}

TEST_CASE("trick vs direct moments at T = 1000") {
    const ZeroTable& tbl = table_1150();
    double T = 1000.0;
    ShiftParam a = ShiftParam::from_c(1.0, T);
    for (int n : {2, 3}) {
        double direct = sigma_moment_direct(n, a, T, tbl, {});
        double trick = sigma_moment_trick(n, a, T, tbl, {});
        // Montgomery's-trick error is O(log^{3n} T); the observed constant is well
        // below 1, checked here with C = 1
        double budget = std::pow(std::log(T), 3.0 * n);
        CHECK(std::abs(trick - direct) < budget);
        CHECK(trick / direct == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("Montgomery F and the S2 cross-check at T = 1e4" * doctest::timeout(300)) {
    // Shared computed table to just above 1e4.  Both checks here probe
    // asymptotic statements at desk scale, so the tolerances are the honest
    // finite-size envelopes (the raw numbers are reported by the harness).
    double T = 1e4, L = std::log(T);
    ZeroTable tbl = find_zeros(0.0, T + 20.0, 0.05);

    // F(0,T): the Montgomery model value is log T with a (1+o(1)) factor
    // that is still ~0.7 at this height; the finite-size density reference
    // log(T/2pi) is matched within 15 percent
    double F0 = pair_correlation_F(0.0, tbl, T);
    CHECK(F0 / L == doctest::Approx(1.0).epsilon(0.30));
    CHECK(F0 / std::log(T / kTwoPi) == doctest::Approx(1.0).epsilon(0.15));
    // in the Montgomery-conjecture region F is close to 1 already
    double F12 = pair_correlation_F(1.2, tbl, T);
    CHECK(F12 == doctest::Approx(1.0).epsilon(0.15));

    // S2 with a Gaussian test function against the GUE prediction: with the
    // counting-function unfolding (unit local density) and the zero-count
    // normalization the comparison closes within 5 percent
    auto f = make_pair_fn([](double d) { return std::exp(-d * d); }, 4.0, 1.0);
    UnfoldedZeros uc;
    uc.L = L;
    uc.T = T;
    for (double g : tbl.ordinates())
        if (g <= T) uc.values.push_back(von_mangoldt_N(g));
    double s2 = s_n_sum(f, uc);
    QuadratureSpec spec;
    auto q = integrate_line([&](double y) { return f(y, 0.0) * W2_pair(y, 0.0); }, 1.0,
                            spec);
    REQUIRE(q.converged);
    double n_zeros = static_cast<double>(count_N(tbl, T));
    CHECK(s2 / (n_zeros * q.value) == doctest::Approx(1.0).epsilon(0.05));

    // the raw scaled-unfolding ratio (gamma L/2pi values, TL/2pi norm) is the
    // trend quantity: well below 1 here, reported rather than asserted
    UnfoldedZeros us = unfold(tbl, T);
    UnfoldedZeros usT;
    usT.L = us.L;
    usT.T = us.T;
    double cutoff = L * T / kTwoPi;
    for (double v : us.values)
        if (v <= cutoff) usT.values.push_back(v);
    double s2_raw = s_n_sum(f, usT);
    double pred_raw = T * L / kTwoPi * q.value;
    CHECK(s2_raw / pred_raw > 0.2);
    CHECK(s2_raw / pred_raw < 1.0);
}

TEST_CASE("empirical pair correlation plugged into the second moment" *
          doctest::timeout(600)) {
    // tabulate F(alpha) on [1,3] from computed zeros and feed it through the
    // custom model: Montgomery's conjecture puts F ~ 1 there, so the
    // correction shifts the second moment by far less than 10 percent
    double T = 1e4;
    ZeroTable tbl = find_zeros(0.0, T + 20.0, 0.05);
    std::vector<double> grid = {1.0, 1.4, 1.8, 2.2, 2.6, 3.0};
    std::vector<double> vals;
    for (double alpha : grid) vals.push_back(pair_correlation_F(alpha, tbl, T));
    auto F = [&](double alpha) {
        if (alpha <= grid.front()) return vals.front();
        if (alpha >= grid.back()) return vals.back();
        auto it = std::upper_bound(grid.begin(), grid.end(), alpha);
        std::size_t i = static_cast<std::size_t>(it - grid.begin());
        double f = (alpha - grid[i - 1]) / (grid[i] - grid[i - 1]);
        return (1.0 - f) * vals[i - 1] + f * vals[i];
    };
    double a = 1.0 / std::log(T);
    double base = gg_second_moment(a, T);
    double custom = gg_second_moment(a, T, FModel::custom, F);
    CHECK(std::abs(custom - base) < 0.1 * base);
    // F is genuinely close to 1 in the conjectured region at this height
    for (double v : vals) CHECK(v == doctest::Approx(1.0).epsilon(0.2));
}
