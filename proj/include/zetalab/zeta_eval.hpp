#ifndef ZETALAB_ZETA_EVAL_HPP
#define ZETALAB_ZETA_EVAL_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/kahan.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab {

// Offset a > 0 from the half-line together with its dimensionless value
// c = a log T.  The asymptotic comparisons live in the regime c ~ 1.
struct ShiftParam {
    double a;
    double c;

    static ShiftParam from_a(double a, double T) {
        if (a <= 0.0) throw std::invalid_argument("ShiftParam: a must be positive");
        return {a, a * std::log(T)};
    }
    static ShiftParam from_c(double c, double T) {
        if (c <= 0.0) throw std::invalid_argument("ShiftParam: c must be positive");
        return {c / std::log(T), c};
    }
};

enum class TailModel { density_integral, drop };

// smooth zero-density model log(u/2pi)/2pi, clamped to 0 below u = 2pi
inline double zero_density(double u) {
    if (u <= kTwoPi) return 0.0;
    return std::log(u / kTwoPi) / kTwoPi;
}

namespace tail_detail {

// Integrate g(u) * zero_density(u) over [lo, infinity) with fixed Kronrod
// rules on geometrically growing segments.  g must be smooth and decay like
// u^-2 on the range; cost is O(1) and fully deterministic.
template <class G, class Acc>
void density_integral_geometric(const G& g, double lo, Acc& acc) {
    auto gd = [&](double u) { return g(u) * zero_density(u); };
    double left = lo;
    for (int seg = 0; seg < 16; ++seg) {
        double right = left * 4.0;
        acc += gk15_fixed(gd, left, right);
        left = right;
    }
}

template <class G, class Acc>
void density_integral_finite(const G& g, double lo, double hi, Acc& acc) {
    if (hi <= lo) return;
    auto gd = [&](double u) { return g(u) * zero_density(u); };
    // geometric subdivision toward the (possibly) singular-ish lower end
    double left = lo;
    while (left < hi) {
        double right = std::min(left * 4.0, hi);
        acc += gk15_fixed(gd, left, right);
        left = right;
    }
}

} // namespace tail_detail

struct SigmaOptions {
    double window = 0.0; // 0 -> max(50, 1000 a)
    TailModel tail = TailModel::density_integral;

    double effective_window(double a) const {
        return window > 0.0 ? window : std::max(50.0, 1000.0 * a);
    }
};

// Sigma_a(t) = sum over ordinates gamma (and their reflections -gamma) of
// 1/(a^2 + (t-gamma)^2), window-truncated around t with the out-of-window
// zeros replaced by the density-model integral.
inline double sigma_a(double t, const ShiftParam& a_param, const ZeroTable& table,
                      const SigmaOptions& opt = {}) {
    const double a = a_param.a;
    const double W = opt.effective_window(a);
    if (t < 0.0) throw RangeError("sigma_a: t must be nonnegative");
    if (t + W > table.t_max() * (1.0 + 1e-12))
        throw RangeError("sigma_a: window exceeds table coverage near the upper edge");

    const double a2 = a * a;
    const auto& g = table.ordinates();
    auto lo_it = std::lower_bound(g.begin(), g.end(), t - W);
    auto hi_it = std::upper_bound(g.begin(), g.end(), t + W);
    KahanSum sum;
    for (auto it = lo_it; it != hi_it; ++it) {
        double d = t - *it;
        sum.add(1.0 / (a2 + d * d));
    }
    // reflected ordinates -gamma within the window (only possible for t < W)
    if (t < W) {
        auto refl_hi = std::upper_bound(g.begin(), g.end(), W - t);
        for (auto it = g.begin(); it != refl_hi; ++it) {
            double d = t + *it;
            sum.add(1.0 / (a2 + d * d));
        }
    }

    if (opt.tail == TailModel::density_integral) {
        auto lor = [&](double u) {
            double d = t - u;
            return 1.0 / (a2 + d * d);
        };
        // above the window
        tail_detail::density_integral_geometric(lor, t + W, sum);
        // below the window, down to the density cutoff
        tail_detail::density_integral_finite(lor, kTwoPi, t - W, sum);
        // reflected zeros outside the direct range
        auto lor_refl = [&](double u) {
            double d = t + u;
            return 1.0 / (a2 + d * d);
        };
        tail_detail::density_integral_geometric(lor_refl, std::max(kTwoPi, W - t), sum);
    }
    return sum.value();
}

// Declared budget for the window truncation: the density model replaces the
// out-of-window zeros, whose count fluctuates by O(log) per unit; the
// weight there is at most 1/W^2.
inline double sigma_tail_budget(double t, double window) {
    return 10.0 * std::log(t + 2.0) / (window * window) + 1e-9;
}

// Evaluation context for the partial-fraction formula
//   zeta'/zeta(s) = A - 1/(s-1) - (1/2) Gamma'/Gamma(s/2+1)
//                   + sum_rho (1/(s-rho) + 1/rho).
// A = (1/2)log pi - sum_rho Re(1/rho) in closed form: evaluating the formula
// at s = 0 against zeta'/zeta(0) = log 2pi (the rho-sum telescopes to zero
// there) gives A = log 2pi - 1 - gamma_E/2.  The defining sum over zeros
// converges far too slowly to use directly; the closed form is checked
// downstream by the zeta'/zeta(2) Dirichlet-series oracle.
struct LogDerivContext {
    const ZeroTable* table = nullptr;
    double A = kLogDerivA;
    double window = 50.0;
    TailModel tail = TailModel::density_integral;

    static constexpr double kLogDerivA =
        1.83787706640934548356 - 1.0 - 0.5 * kEulerGamma; // log(2pi) - 1 - gamma_E/2

    LogDerivContext(const ZeroTable& tbl, double win = 50.0,
                    TailModel tm = TailModel::density_integral)
        : table(&tbl), A(kLogDerivA), window(win), tail(tm) {}

    void require_window_for(double a) const {
        if (window < 10.0 * a)
            throw std::invalid_argument("LogDerivContext: window must be >= 10a");
    }
};

// zeta'/zeta(s) by the partial-fraction formula over a windowed zero set.
// Zeros with gamma <= window or |gamma - |Im s|| <= window enter exactly (as
// conjugate pairs, so conjugate symmetry is exact); the remainder enters
// through the density model.
inline std::complex<double> log_deriv_zeta(std::complex<double> s,
                                           const LogDerivContext& ctx) {
    if (!(s.real() > 0.5 && s.real() <= 3.0))
        throw std::invalid_argument("log_deriv_zeta: requires 1/2 < Re s <= 3");
    const double tau = std::abs(s.imag());
    const double W = ctx.window;
    ctx.require_window_for(s.real() - 0.5);
    if (tau + W > ctx.table->t_max() * (1.0 + 1e-12))
        throw RangeError("log_deriv_zeta: window exceeds table coverage");

    const std::complex<double> w = s - 0.5;
    const std::complex<double> w2 = w * w;
    std::complex<double> base =
        ctx.A - 1.0 / (s - 1.0) - 0.5 * digamma(0.5 * s + 1.0);

    // conjugate-pair contribution of the zero at +/- i gamma
    auto pair_term = [&](double gamma) -> std::complex<double> {
        return 2.0 * w / (w2 + gamma * gamma) + 1.0 / (0.25 + gamma * gamma);
    };

    const auto& g = ctx.table->ordinates();
    KahanSumComplex zsum;
    // direct set: (0, W] plus [tau - W, tau + W]
    const bool merged = (tau <= 2.0 * W);
    {
        double d1_hi = merged ? tau + W : W;
        auto e1 = std::upper_bound(g.begin(), g.end(), d1_hi);
        for (auto it = g.begin(); it != e1; ++it) zsum.add(pair_term(*it));
        if (!merged) {
            auto b2 = std::lower_bound(g.begin(), g.end(), tau - W);
            auto e2 = std::upper_bound(g.begin(), g.end(), tau + W);
            for (auto it = b2; it != e2; ++it) zsum.add(pair_term(*it));
        }
    }
    if (ctx.tail == TailModel::density_integral) {
        if (!merged)
            tail_detail::density_integral_finite(pair_term, W, tau - W, zsum);
        tail_detail::density_integral_geometric(pair_term, tau + W, zsum);
    }
    return base + zsum.value();
}

// Re zeta'/zeta(1/2+a+it) via the Lorentzian zero sum:
//   -(1/2) log(t/2pi) + a Sigma_a(t).
inline double re_logderiv_via_sigma(double t, const ShiftParam& a, const ZeroTable& table,
                                    const SigmaOptions& opt = {}) {
    if (t < 10.0) throw std::invalid_argument("re_logderiv_via_sigma: requires t >= 10");
    return -0.5 * std::log(t / kTwoPi) + a.a * sigma_a(t, a, table, opt);
}

namespace tail_detail {

// linear interpolation table for slowly varying tail corrections; the tails
// vary on scale t (they are smoothed log-density integrals), so step-1
// linear interpolation is accurate to ~1e-9 of the tail value
template <class V>
struct TailGrid {
    double t0 = 0.0, h = 1.0;
    std::vector<V> vals;

    V operator()(double t) const {
        double x = (t - t0) / h;
        if (x <= 0.0) return vals.front();
        auto i = static_cast<std::size_t>(x);
        if (i + 1 >= vals.size()) return vals.back();
        double f = x - static_cast<double>(i);
        return (1.0 - f) * vals[i] + f * vals[i + 1];
    }
};

} // namespace tail_detail

// Prepared Sigma_a evaluator for t-sweeps: identical direct window sum, with
// the density-tail correction precomputed on a unit grid and interpolated.
class SigmaEvaluator {
public:
    SigmaEvaluator(const ZeroTable& table, const ShiftParam& a, double t_lo, double t_hi,
                   const SigmaOptions& opt = {})
        : table_(&table), a_(a.a), W_(opt.effective_window(a.a)), tail_mode_(opt.tail) {
        if (t_lo < 0.0 || t_hi < t_lo)
            throw std::invalid_argument("SigmaEvaluator: bad sweep range");
        if (t_hi + W_ > table.t_max() * (1.0 + 1e-12))
            throw RangeError("SigmaEvaluator: window exceeds table coverage");
        if (tail_mode_ == TailModel::density_integral) {
            grid_.t0 = t_lo;
            grid_.h = 1.0;
            std::size_t n = static_cast<std::size_t>((t_hi - t_lo) / grid_.h) + 2;
            grid_.vals.reserve(n);
            const double a2 = a_ * a_;
            for (std::size_t i = 0; i < n; ++i) {
                double t = grid_.t0 + grid_.h * static_cast<double>(i);
                KahanSum tl;
                auto lor = [&](double u) { double d = t - u; return 1.0 / (a2 + d * d); };
                tail_detail::density_integral_geometric(lor, t + W_, tl);
                tail_detail::density_integral_finite(lor, kTwoPi, t - W_, tl);
                auto lor_refl = [&](double u) { double d = t + u; return 1.0 / (a2 + d * d); };
                tail_detail::density_integral_geometric(lor_refl, std::max(kTwoPi, W_ - t), tl);
                grid_.vals.push_back(tl.value());
            }
        }
    }

    double operator()(double t) const {
        const double a2 = a_ * a_;
        const auto& g = table_->ordinates();
        auto lo = std::lower_bound(g.begin(), g.end(), t - W_);
        auto hi = std::upper_bound(g.begin(), g.end(), t + W_);
        double s = 0.0;
        for (auto it = lo; it != hi; ++it) {
            double d = t - *it;
            s += 1.0 / (a2 + d * d);
        }
        if (t < W_) {
            auto refl_hi = std::upper_bound(g.begin(), g.end(), W_ - t);
            for (auto it = g.begin(); it != refl_hi; ++it) {
                double d = t + *it;
                s += 1.0 / (a2 + d * d);
            }
        }
        if (tail_mode_ == TailModel::density_integral) s += grid_(t);
        return s;
    }

    double window() const { return W_; }

private:
    const ZeroTable* table_;
    double a_, W_;
    TailModel tail_mode_;
    tail_detail::TailGrid<double> grid_;
};

// Prepared zeta'/zeta(sigma0 + it) evaluator for t-sweeps at fixed sigma0.
class LogDerivEvaluator {
public:
    LogDerivEvaluator(const LogDerivContext& ctx, double sigma0, double t_lo, double t_hi)
        : ctx_(ctx), sigma0_(sigma0) {
        if (!(sigma0 > 0.5 && sigma0 <= 3.0))
            throw std::invalid_argument("LogDerivEvaluator: requires 1/2 < sigma0 <= 3");
        if (t_lo < 0.0 || t_hi < t_lo)
            throw std::invalid_argument("LogDerivEvaluator: bad sweep range");
        if (t_hi + ctx.window > ctx.table->t_max() * (1.0 + 1e-12))
            throw RangeError("LogDerivEvaluator: window exceeds table coverage");
        if (ctx.tail == TailModel::density_integral) {
            grid_.t0 = t_lo;
            grid_.h = 1.0;
            std::size_t n = static_cast<std::size_t>((t_hi - t_lo) / grid_.h) + 2;
            grid_.vals.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                double tau = grid_.t0 + grid_.h * static_cast<double>(i);
                grid_.vals.push_back(tail_value(tau));
            }
        }
    }

    std::complex<double> operator()(double t) const {
        const std::complex<double> s(sigma0_, t);
        const std::complex<double> w = s - 0.5;
        const std::complex<double> w2 = w * w;
        std::complex<double> base = ctx_.A - 1.0 / (s - 1.0) - 0.5 * digamma(0.5 * s + 1.0);
        const double tau = std::abs(t);
        const double W = ctx_.window;
        const auto& g = ctx_.table->ordinates();
        KahanSumComplex zsum;
        auto pair_term = [&](double gamma) -> std::complex<double> {
            return 2.0 * w / (w2 + gamma * gamma) + 1.0 / (0.25 + gamma * gamma);
        };
        const bool merged = (tau <= 2.0 * W);
        double d1_hi = merged ? tau + W : W;
        auto e1 = std::upper_bound(g.begin(), g.end(), d1_hi);
        for (auto it = g.begin(); it != e1; ++it) zsum.add(pair_term(*it));
        if (!merged) {
            auto b2 = std::lower_bound(g.begin(), g.end(), tau - W);
            auto e2 = std::upper_bound(g.begin(), g.end(), tau + W);
            for (auto it = b2; it != e2; ++it) zsum.add(pair_term(*it));
        }
        if (ctx_.tail == TailModel::density_integral) zsum.add(grid_(tau));
        return base + zsum.value();
    }

private:
    std::complex<double> tail_value(double tau) const {
        const std::complex<double> s(sigma0_, tau);
        const std::complex<double> w = s - 0.5;
        const std::complex<double> w2 = w * w;
        auto pair_term = [&](double gamma) -> std::complex<double> {
            return 2.0 * w / (w2 + gamma * gamma) + 1.0 / (0.25 + gamma * gamma);
        };
        const double W = ctx_.window;
        KahanSumComplex acc;
        if (tau > 2.0 * W)
            tail_detail::density_integral_finite(pair_term, W, tau - W, acc);
        tail_detail::density_integral_geometric(pair_term, tau + W, acc);
        return acc.value();
    }

    LogDerivContext ctx_;
    double sigma0_;
    tail_detail::TailGrid<std::complex<double>> grid_;
};

// Numerically integrates (zeta'/zeta(sigma+it))^n over [0,T] and reports
// |integral| / bound, with the bound from the mean-value estimates
//   n = 1:  log T |log(sigma - 1/2)|,
//   n >= 2: log^n T / (sigma - 1/2)^{n-1}.
// Composite trapezoid with step (sigma-1/2)/5; values <= ~10 are the
// expected outcome.
inline double lemma2_diagnostic(double sigma, double T, int n, const LogDerivContext& ctx) {
    if (!(0.5 < sigma && sigma < 0.75))
        throw RangeError("lemma2_diagnostic: requires 1/2 < sigma < 3/4");
    if (n < 1) throw std::invalid_argument("lemma2_diagnostic: n >= 1");
    const double h = (sigma - 0.5) / 5.0;
    const long steps = static_cast<long>(std::ceil(T / h));
    const double hh = T / static_cast<double>(steps);
    LogDerivEvaluator eval(ctx, sigma, 0.0, T);
    KahanSumComplex acc;
    for (long i = 0; i <= steps; ++i) {
        double t = hh * static_cast<double>(i);
        std::complex<double> v = eval(t);
        std::complex<double> p = v;
        for (int k = 1; k < n; ++k) p *= v;
        acc.add((i == 0 || i == steps) ? 0.5 * p : p);
    }
    double integral = std::abs(acc.value() * hh);
    double logT = std::log(T);
    double bound = (n == 1) ? logT * std::abs(std::log(sigma - 0.5))
                            : std::pow(logT, n) / std::pow(sigma - 0.5, n - 1);
    return integral / bound;
}

} // namespace zetalab

#endif
