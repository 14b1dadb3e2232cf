#ifndef ZETALAB_STATISTICS_HPP
#define ZETALAB_STATISTICS_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/kahan.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_eval.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab {

// n-variate test function in difference form.  decay_exponent is the
// guaranteed algebraic decay in the difference hyperplane; fourier_support,
// when set, bounds sum_j |xi_j| of the Fourier support (the regime in which
// the correlation average is a Rudnick-Sarnak theorem rather than a
// hypothesis); scale_hint is the width used
// by the quadrature mapping and the enumeration windows.
struct TestFunction {
    int arity = 2;
    std::function<double(const double*)> eval;
    bool difference_form = true;
    double decay_exponent = 2.0;
    std::optional<double> fourier_support;
    double scale_hint = 1.0;

    double operator()(double x, double y) const {
        double v[2] = {x, y};
        return eval(v);
    }
    double operator()(double x, double y, double z) const {
        double v[3] = {x, y, z};
        return eval(v);
    }
};

inline TestFunction make_pair_fn(std::function<double(double)> gap_fn,
                                 double decay_exponent = 2.0, double scale_hint = 1.0) {
    TestFunction f;
    f.arity = 2;
    f.decay_exponent = decay_exponent;
    f.scale_hint = scale_hint;
    f.eval = [g = std::move(gap_fn)](const double* x) { return g(x[0] - x[1]); };
    return f;
}

// f0 = (1/n!) sum over permutations; idempotent by construction.
inline TestFunction symmetrize(const TestFunction& f) {
    if (f.arity != 2 && f.arity != 3)
        throw std::invalid_argument("symmetrize: arity must be 2 or 3");
    TestFunction out = f;
    if (f.arity == 2) {
        out.eval = [inner = f.eval](const double* x) {
            double a[2] = {x[0], x[1]}, b[2] = {x[1], x[0]};
            return 0.5 * (inner(a) + inner(b));
        };
    } else {
        out.eval = [inner = f.eval](const double* x) {
            static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            double s = 0.0;
            for (const auto& p : perms) {
                double v[3] = {x[p[0]], x[p[1]], x[p[2]]};
                s += inner(v);
            }
            return s / 6.0;
        };
    }
    return out;
}

// Montgomery's pair correlation
//   F(alpha,T) = N(T)^{-1} sum_{0<g,g'<=T} T^{i alpha (g-g')} w(g-g'),
// w(u) = 4/(4+u^2), diagonal included.  The sum is conjugate-symmetric, so
// the imaginary part must vanish; it is accumulated and asserted.
inline double pair_correlation_F(double alpha, const ZeroTable& table, double T) {
    if (std::abs(alpha) > 3.0)
        throw std::invalid_argument("pair_correlation_F: |alpha| must be <= 3");
    if (T > table.t_max() * (1.0 + 1e-12))
        throw RangeError("pair_correlation_F: table does not cover [0,T]");
    const auto& g = table.ordinates();
    auto end = std::upper_bound(g.begin(), g.end(), T);
    const long n = static_cast<long>(end - g.begin());
    if (n == 0) throw RangeError("pair_correlation_F: no zeros below T");
    const double aL = alpha * std::log(T);
    KahanSum re, im;
    for (long j = 0; j < n; ++j) {
        for (long k = 0; k < n; ++k) {
            double d = g[j] - g[k];
            double w = 4.0 / (4.0 + d * d);
            re.add(std::cos(aL * d) * w);
            im.add(std::sin(aL * d) * w);
        }
    }
    double imag = im.value() / static_cast<double>(n);
    if (std::abs(imag) > 1e-10)
        throw IdentityViolation("pair_correlation_F: imaginary part above 1e-10");
    return re.value() / static_cast<double>(n);
}

// ---- the f1/f2 kernels of the triple-moment decompositions ----------------
// Arguments are unfolded ordinates; a is the physical shift, L = log T.
// Width parameter: c = L a / pi.

inline double kernel_f2_pair(double x, double y, double a, double L) {
    double c2 = L * a / kPi;
    c2 *= c2;
    double d = x - y;
    return (L * L / (4.0 * kPi * kPi)) / (c2 + d * d);
}

inline double kernel_f1_pair(double x, double y, double a, double L) {
    double c2 = L * a / kPi;
    c2 *= c2;
    double d = x - y;
    double q = c2 + d * d;
    double l4 = L * L * L * L;
    return (l4 / (16.0 * kPi * kPi * kPi * kPi)) / (q * q);
}

inline double kernel_f2_triple(double x, double y, double z, double a, double L) {
    double c2 = L * a / kPi;
    c2 *= c2;
    double d1 = x - y, d2 = y - z;
    double l4 = L * L * L * L;
    return (l4 / (16.0 * kPi * kPi * kPi * kPi)) / ((c2 + d1 * d1) * (c2 + d2 * d2));
}

inline double kernel_f1_triple(double x, double y, double z, double a, double L) {
    double c2 = L * a / kPi;
    c2 *= c2;
    double d1 = x - y, d2 = y - z, d3 = z - x;
    double l6 = L * L * L * L * L * L;
    return (l6 / (64.0 * kPi * kPi * kPi * kPi * kPi * kPi)) /
           ((c2 + d1 * d1) * (c2 + d2 * d2) * (c2 + d3 * d3));
}

// the same kernels in height units (width 2a): the building blocks of the
// closed-form Lorentzian integrals
inline double lemma5_F1(double x, double y, double z, double a) {
    double w = 4.0 * a * a;
    double d1 = x - y, d2 = y - z, d3 = z - x;
    return 1.0 / ((w + d1 * d1) * (w + d2 * d2) * (w + d3 * d3));
}

inline double lemma5_F2(double x, double y, double z, double a) {
    double w = 4.0 * a * a;
    double d1 = x - y, d2 = y - z;
    return 1.0 / ((w + d1 * d1) * (w + d2 * d2));
}

// ---- closed-form Lorentzian product integrals ------------------------------

// integral over the whole line of two Lorentzians of width a centered at x,y
inline double lorentzian_pair_integral(double x, double y, double a) {
    if (a <= 0.0) throw std::invalid_argument("lorentzian_pair_integral: a > 0");
    double d = x - y;
    return (2.0 * kPi / a) / (4.0 * a * a + d * d);
}

// integral of three Lorentzians: 12 pi a F1 + (pi/a)(F2 cyclic sum)
inline double lorentzian_triple_integral(double x, double y, double z, double a) {
    if (a <= 0.0) throw std::invalid_argument("lorentzian_triple_integral: a > 0");
    return 12.0 * kPi * a * lemma5_F1(x, y, z, a) +
           (kPi / a) * (lemma5_F2(x, y, z, a) + lemma5_F2(y, z, x, a) +
                        lemma5_F2(z, x, y, a));
}

// ---- distinct-index sums --------------------------------------------------

struct SnSumOptions {
    double window = 0.0;       // 0 -> 50 * max(1, scale_hint); <0 -> exhaustive
    long exhaustive_below = 200;
};

namespace stats_detail {

inline double effective_window(const TestFunction& f, const SnSumOptions& opt) {
    if (opt.window < 0.0) return -1.0;
    return opt.window > 0.0 ? opt.window : 50.0 * std::max(1.0, f.scale_hint);
}

} // namespace stats_detail

// S_n(T,f) = sum over ordered tuples of distinct indices of f(unfolded
// tuple).  Tables small enough are enumerated exhaustively; larger tables
// use sorted-window enumeration around the leading index, which for the
// shipped kernels (algebraic decay >= 2 in every gap) skips only pairs
// contributing below ~1e-6 of the total at the default window.
inline double s_n_sum(const TestFunction& f, const UnfoldedZeros& u,
                      const SnSumOptions& opt = {}) {
    if (!f.difference_form)
        throw std::invalid_argument("s_n_sum: f must be difference-form");
    if (f.decay_exponent < 2.0)
        throw std::invalid_argument("s_n_sum: decay exponent must be >= 2");
    const auto& x = u.values;
    const long n = static_cast<long>(x.size());
    double G = stats_detail::effective_window(f, opt);
    const bool exhaustive = (G < 0.0) || n <= opt.exhaustive_below;
    KahanSum sum;
    if (f.arity == 2) {
        for (long j = 0; j < n; ++j) {
            if (exhaustive) {
                for (long k = 0; k < n; ++k)
                    if (k != j) sum.add(f(x[j], x[k]));
            } else {
                for (long k = j - 1; k >= 0 && x[j] - x[k] <= G; --k) {
                    double v = f(x[j], x[k]) + f(x[k], x[j]);
                    sum.add(v);
                }
            }
        }
        return sum.value();
    }
    if (f.arity != 3) throw std::invalid_argument("s_n_sum: arity must be 2 or 3");
    auto lo_idx = [&](long j, double reach) {
        return static_cast<long>(std::lower_bound(x.begin(), x.end(), x[j] - reach) -
                                 x.begin());
    };
    auto hi_idx = [&](long j, double reach) {
        return static_cast<long>(std::upper_bound(x.begin(), x.end(), x[j] + reach) -
                                 x.begin()) - 1;
    };
    for (long j = 0; j < n; ++j) {
        long klo = exhaustive ? 0 : lo_idx(j, 2.0 * G);
        long khi = exhaustive ? n - 1 : hi_idx(j, 2.0 * G);
        for (long k = klo; k <= khi; ++k) {
            if (k == j) continue;
            for (long l = klo; l <= khi; ++l) {
                if (l == j || l == k) continue;
                sum.add(f(x[j], x[k], x[l]));
            }
        }
    }
    return sum.value();
}

// ---- unrestricted-to-distinct decomposition -------------------------------

enum class KernelKind { f1, f2 };

struct DecompositionResult {
    double distinct_triple = 0.0;
    std::vector<std::pair<double, double>> distinct_pair_terms; // (coefficient, value)
    std::pair<double, long> diagonal{0.0, 0};                   // (coefficient, count)
    double total = 0.0;
};

// Splits the unrestricted triple sum of f1 or f2 over unfolded ordinates
// into distinct-index sums plus coincidence terms:
//   f1: sum = Sigma' f1(3) + (3/4a^2) Sigma' f1(2) + N/(2^6 a^6)
//   f2: sum = Sigma' f2(3) + (2/4a^2) Sigma' f2(2) + Sigma' f1(2) + N/(2^4 a^4)
// On tables of <= max_verify_count zeros the identity is checked against the
// exhaustive unrestricted sum and IdentityViolation is raised beyond 1e-9.
inline DecompositionResult decompose_unrestricted(KernelKind kind, const UnfoldedZeros& u,
                                                  double a,
                                                  long max_verify_count = 200) {
    const double L = u.L;
    const long n = static_cast<long>(u.values.size());
    const double scale = std::max(1.0, L * a / kPi);

    TestFunction triple;
    triple.arity = 3;
    triple.decay_exponent = 2.0;
    triple.scale_hint = scale;
    if (kind == KernelKind::f1)
        triple.eval = [a, L](const double* x) {
            return kernel_f1_triple(x[0], x[1], x[2], a, L);
        };
    else
        triple.eval = [a, L](const double* x) {
            return kernel_f2_triple(x[0], x[1], x[2], a, L);
        };
    TestFunction p1 = make_pair_fn([a, L](double d) { return kernel_f1_pair(d, 0.0, a, L); },
                                   4.0, scale);
    TestFunction p2 = make_pair_fn([a, L](double d) { return kernel_f2_pair(d, 0.0, a, L); },
                                   2.0, scale);

    DecompositionResult r;
    r.distinct_triple = s_n_sum(triple, u);
    double s_f1p = s_n_sum(p1, u);
    double a2 = a * a;
    if (kind == KernelKind::f1) {
        r.distinct_pair_terms = {{3.0 / (4.0 * a2), s_f1p}};
        r.diagonal = {1.0 / (64.0 * a2 * a2 * a2), n};
    } else {
        double s_f2p = s_n_sum(p2, u);
        r.distinct_pair_terms = {{2.0 / (4.0 * a2), s_f2p}, {1.0, s_f1p}};
        r.diagonal = {1.0 / (16.0 * a2 * a2), n};
    }
    KahanSum tot;
    tot.add(r.distinct_triple);
    for (auto& [coef, val] : r.distinct_pair_terms) tot.add(coef * val);
    tot.add(r.diagonal.first * static_cast<double>(r.diagonal.second));
    r.total = tot.value();

    if (n <= max_verify_count) {
        KahanSum brute;
        const auto& x = u.values;
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                for (long k = 0; k < n; ++k) {
                    double v[3] = {x[i], x[j], x[k]};
                    brute.add(triple.eval(v));
                }
        double b = brute.value();
        if (std::abs(b - r.total) > 1e-9 * std::max(1.0, std::abs(b)))
            throw IdentityViolation("decompose_unrestricted: parts disagree with the "
                                    "exhaustive unrestricted sum");
    }
    return r;
}

// ---- moments of Sigma_a ----------------------------------------------------

// integral over [0,T] of Sigma_a(t)^n log^k(t/2pi) dt, composite trapezoid
// with step a/5 and compensated accumulation.  The Lorentzian sum is analytic
// in a strip of half-width a, so the trapezoid error is ~e^{-10 pi}; the
// dominant error is the window truncation inside Sigma_a itself.
inline double sigma_weighted_moment(int n, int logk, const ShiftParam& a, double T,
                                    const ZeroTable& table, const SigmaOptions& opt = {}) {
    if (n < 0 || n > 3) throw std::invalid_argument("sigma moment: n in {0,..,3}");
    if (n == 0 && logk == 0) return T;
    SigmaEvaluator ev(table, a, 0.0, T, opt);
    const double h0 = a.a / 5.0;
    const long steps = static_cast<long>(std::ceil(T / h0));
    const double h = T / static_cast<double>(steps);
    auto f = [&](double t) {
        double v = 1.0;
        if (n > 0) {
            double s = ev(t);
            v = s;
            for (int i = 1; i < n; ++i) v *= s;
        }
        if (logk > 0) {
            double lg = std::log(t / kTwoPi);
            for (int i = 0; i < logk; ++i) v *= lg;
        }
        return v;
    };
    KahanSum acc;
    long i0 = (logk > 0) ? 1 : 0; // log(t/2pi) diverges at t=0; sliver added below
    for (long i = i0; i <= steps; ++i) {
        double t = h * static_cast<double>(i);
        double v = f(t);
        acc.add((i == i0 || i == steps) ? 0.5 * v : v);
    }
    double result = acc.value() * h;
    if (logk > 0) {
        // analytic sliver of the integrable log-power over [0,h]
        double l = std::log(h / kTwoPi);
        double anti = 0.0;
        switch (logk) {
            case 1: anti = h * (l - 1.0); break;
            case 2: anti = h * (l * l - 2.0 * l + 2.0); break;
            case 3: anti = h * (l * l * l - 3.0 * l * l + 6.0 * l - 6.0); break;
            default: throw std::invalid_argument("sigma moment: logk in {0,..,3}");
        }
        double s = (n > 0) ? std::pow(ev(0.5 * h), n) : 1.0;
        result += s * anti;
    }
    return result;
}

inline double sigma_moment_direct(int n, const ShiftParam& a, double T,
                                  const ZeroTable& table, const SigmaOptions& opt = {}) {
    return sigma_weighted_moment(n, 0, a, T, table, opt);
}

// ---- Montgomery's trick -----------------------------------------------------

struct TrickOptions {
    double pair_window = 50.0; // height-unit window for near pairs
    bool density_tail = true;  // model distant in-range zeros by the density
};

namespace stats_detail {

// S2a(y) = sum over table zeros in (0,T] of 1/(4a^2 + (x-y)^2), windowed with
// a density model for the distant part of the SAME range (the trick's sums
// are restricted to 0 < gamma < T by construction).
class RestrictedLorentzianSum {
public:
    RestrictedLorentzianSum(const ZeroTable& table, double T, double width_half,
                            const TrickOptions& opt)
        : g_(&table.ordinates()), T_(T), w2_(width_half * width_half * 4.0),
          G_(opt.pair_window), tail_(opt.density_tail) {
        n_ = static_cast<long>(std::upper_bound(g_->begin(), g_->end(), T) - g_->begin());
    }

    double operator()(double y) const {
        const auto& g = *g_;
        auto lo = std::lower_bound(g.begin(), g.begin() + n_, y - G_);
        auto hi = std::upper_bound(g.begin(), g.begin() + n_, y + G_);
        double s = 0.0;
        for (auto it = lo; it != hi; ++it) {
            double d = y - *it;
            s += 1.0 / (w2_ + d * d);
        }
        if (tail_) {
            auto lor = [&](double x) {
                double d = y - x;
                return 1.0 / (w2_ + d * d);
            };
            KahanSum tl;
            tail_detail::density_integral_finite(lor, kTwoPi, y - G_, tl);
            if (y + G_ < T_) tail_detail::density_integral_finite(lor, y + G_, T_, tl);
            s += tl.value();
        }
        return s;
    }

    long count() const { return n_; }

private:
    const std::vector<double>* g_;
    double T_;
    double w2_;
    double G_;
    bool tail_;
    long n_ = 0;
};

} // namespace stats_detail

// Closed-form evaluation of int over the whole line of the truncated sum
// (sum_{0<gamma<T} Lorentzian_a(t-gamma))^n via the closed forms above:
//   n = 2: sum over ordered pairs of 2pi/a / (4a^2 + gap^2)
//   n = 3: 12 pi a Sigma F1 + (3 pi / a) Sigma F2, unrestricted sums.
inline double sigma_moment_trick(int n, const ShiftParam& ap, double T,
                                 const ZeroTable& table, const TrickOptions& opt = {}) {
    if (n != 2 && n != 3) throw std::invalid_argument("sigma_moment_trick: n in {2,3}");
    const double a = ap.a;
    const auto& g = table.ordinates();
    const long N = static_cast<long>(std::upper_bound(g.begin(), g.end(), T) - g.begin());
    stats_detail::RestrictedLorentzianSum S(table, T, a, opt);

    if (n == 2) {
        // sum over gamma of (2pi/a) * S2a(gamma), S2a including the diagonal
        KahanSum acc;
        for (long j = 0; j < N; ++j) acc.add(S(g[j]));
        return (2.0 * kPi / a) * acc.value();
    }

    // n = 3
    // F2 part factorizes through the middle index: Sigma F2 = sum_y S2a(y)^2
    KahanSum f2sum;
    for (long j = 0; j < N; ++j) {
        double s = S(g[j]);
        f2sum.add(s * s);
    }
    // F1 part: all three gaps appear, so only tuples with x,z near y matter
    // (the far tails decay like gap^-4 and contribute ~ (a/G)^3 relatively)
    const double w2 = 4.0 * a * a;
    KahanSum f1sum;
    for (long j = 0; j < N; ++j) {
        double y = g[j];
        auto lo = std::lower_bound(g.begin(), g.begin() + N, y - opt.pair_window);
        auto hi = std::upper_bound(g.begin(), g.begin() + N, y + opt.pair_window);
        for (auto ix = lo; ix != hi; ++ix) {
            double dxy = *ix - y;
            double lx = 1.0 / (w2 + dxy * dxy);
            for (auto iz = lo; iz != hi; ++iz) {
                double dyz = y - *iz;
                double dzx = *iz - *ix;
                f1sum.add(lx / ((w2 + dyz * dyz) * (w2 + dzx * dzx)));
            }
        }
    }
    return 12.0 * kPi * a * f1sum.value() + (3.0 * kPi / a) * f2sum.value();
}

} // namespace zetalab

#endif
