#ifndef ZETALAB_GUE_HPP
#define ZETALAB_GUE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/kahan.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/statistics.hpp"

namespace zetalab {

// sinc kernel K(t) = sin(pi t)/(pi t); series branch below |t| = 1e-4 keeps
// the removable singularity smooth to full precision.
inline double sinc_K(double t) {
    double x = kPi * t;
    if (std::abs(t) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// n-level correlation densities W_n = det(K(x_i - x_j))
inline double W2_pair(double x1, double x2) {
    double k = sinc_K(x1 - x2);
    return 1.0 - k * k;
}

inline double W3_triple(double x1, double x2, double x3) {
    double k12 = sinc_K(x1 - x2);
    double k23 = sinc_K(x2 - x3);
    double k31 = sinc_K(x3 - x1);
    return 1.0 + 2.0 * k12 * k23 * k31 - k12 * k12 - k23 * k23 - k31 * k31;
}

// generic determinant evaluation of the same matrices (cofactor expansion),
// kept separate so the explicit formulas can be asserted against it
inline double Wn_det(const double* x, int n) {
    if (n == 2) {
        double k = sinc_K(x[0] - x[1]);
        return 1.0 * 1.0 - k * k;
    }
    if (n == 3) {
        double m[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = sinc_K(x[i] - x[j]);
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    throw std::invalid_argument("Wn_det: n must be 2 or 3");
}

// GUE correlation average: (TL/2pi) * integral of f(x) W_n(x) delta(xbar) dx.
// The delta is realized by the unit-Jacobian change of variables
// y_i = x_i - x_n, s = xbar (determinant 1 for n = 2, 3), which reduces the
// constrained integral to the free difference-space integral of
// f(y,0) W_n(y,0).  For n = 3 the quadrature runs in (u,v) = (y1-y2, y2),
// also unit-Jacobian, which aligns the kernels' Lorentzian factors with the
// tangent-mapped axes.
inline double gue_prediction(const TestFunction& f, double T, double L,
                             const QuadratureSpec& spec = {}) {
    if (!f.difference_form)
        throw std::invalid_argument("gue_prediction: f must be difference-form");
    if (f.decay_exponent < 2.0)
        throw std::invalid_argument("gue_prediction: decay exponent must be >= 2");
    spec.validate();
    const double scale = std::max(1e-6, f.scale_hint);
    QuadResult q;
    if (f.arity == 2) {
        q = integrate_line([&](double y) { return f(y, 0.0) * W2_pair(y, 0.0); }, scale,
                           spec);
    } else if (f.arity == 3) {
        q = integrate_plane(
            [&](double u, double v) {
                return f(u + v, v, 0.0) * W3_triple(u + v, v, 0.0);
            },
            scale, scale, spec);
    } else {
        throw std::invalid_argument("gue_prediction: arity must be 2 or 3");
    }
    if (!q.converged)
        throw QuadratureFailure("gue_prediction: tolerance unmet at max subdivisions");
    return T * L / kTwoPi * q.value;
}

namespace gue_detail {

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// iteration (EISPACK tql1).  d is the diagonal, e the subdiagonal (e[i]
// couples i and i+1); both are clobbered, eigenvalues end in d, ascending.
inline void tql_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("tql_eigenvalues: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
}

} // namespace gue_detail

// One GUE spectrum via the beta = 2 tridiagonal ensemble: diagonal N(0,1),
// k-th subdiagonal chi_{2(dim-k)}/sqrt(2).  Semicircle support is
// [-2 sqrt(dim), 2 sqrt(dim)]; a 64-bit seed fully determines the output.
inline std::vector<double> gue_sample_spectrum(int dim, std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("gue_sample_spectrum: dim must be >= 2");
    Rng rng(seed);
    std::vector<double> d(dim), e(dim, 0.0);
    for (int i = 0; i < dim; ++i) d[i] = rng.normal();
    for (int i = 0; i + 1 < dim; ++i)
        e[i] = rng.chi(2.0 * static_cast<double>(dim - 1 - i)) / std::sqrt(2.0);
    gue_detail::tql_eigenvalues(d, e);
    return d;
}

// integrated semicircle density on [-2 sqrt(n), 2 sqrt(n)]
inline double semicircle_cdf_count(double x, int n) {
    double edge = 2.0 * std::sqrt(static_cast<double>(n));
    if (x <= -edge) return 0.0;
    if (x >= edge) return static_cast<double>(n);
    double s = std::sqrt(edge * edge - x * x);
    return x * s / (4.0 * kPi) +
           (static_cast<double>(n) / kPi) * std::asin(x / edge) + 0.5 * n;
}

// semicircle unfolding eps_i = N_sc(lambda_i): unit mean spacing in the bulk
inline std::vector<double> semicircle_unfold(const std::vector<double>& eigs, int dim) {
    std::vector<double> out;
    out.reserve(eigs.size());
    for (double x : eigs) out.push_back(semicircle_cdf_count(x, dim));
    return out;
}

struct EmpiricalCorrelation {
    double per_level = 0.0; // distinct-tuple sum per reference level
    double std_error = 0.0; // standard error of per_level over repetitions
    double raw_sum = 0.0;   // mean unnormalized distinct-tuple sum
    long ref_levels = 0;
    int repetitions = 0;
};

// Monte Carlo estimate of the distinct-tuple sum of f over semicircle-
// unfolded GUE eigenvalues, bulk-only (central half), averaged over
// independent repetitions.  Normalized per reference level so the value is
// comparable to the quadrature of f(y,0) W_n(y,0) over the difference space.
inline EmpiricalCorrelation gue_empirical_correlation(int n, int dim, int reps,
                                                      const TestFunction& f,
                                                      std::uint64_t seed) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("gue_empirical_correlation: n must be 2 or 3");
    if (f.arity != n)
        throw std::invalid_argument("gue_empirical_correlation: arity mismatch");
    if (dim < 16) throw std::invalid_argument("gue_empirical_correlation: dim >= 16");
    const int lo = dim / 4, hi = 3 * dim / 4; // bulk reference window
    const int pad = static_cast<int>(std::ceil(10.0 * f.scale_hint + 15.0));
    std::vector<double> rep_vals(reps);
    KahanSum raw_acc;
    for (int rep = 0; rep < reps; ++rep) {
        Rng stream = Rng::split(seed, static_cast<std::uint64_t>(rep));
        std::uint64_t sub_seed = stream.next_u64();
        std::vector<double> eig = gue_sample_spectrum(dim, sub_seed);
        std::vector<double> eps = semicircle_unfold(eig, dim);
        KahanSum acc;
        for (int i = lo; i < hi; ++i) {
            int klo = std::max(0, i - pad), khi = std::min(dim - 1, i + pad);
            if (n == 2) {
                for (int k = klo; k <= khi; ++k)
                    if (k != i) acc.add(f(eps[i], eps[k]));
            } else {
                for (int k = klo; k <= khi; ++k) {
                    if (k == i) continue;
                    for (int l = klo; l <= khi; ++l) {
                        if (l == i || l == k) continue;
                        acc.add(f(eps[i], eps[k], eps[l]));
                    }
                }
            }
        }
        raw_acc.add(acc.value());
        rep_vals[rep] = acc.value() / static_cast<double>(hi - lo);
    }
    EmpiricalCorrelation out;
    out.ref_levels = hi - lo;
    out.repetitions = reps;
    out.raw_sum = raw_acc.value() / static_cast<double>(reps);
    KahanSum mean_acc;
    for (double v : rep_vals) mean_acc.add(v);
    out.per_level = mean_acc.value() / static_cast<double>(reps);
    KahanSum var_acc;
    for (double v : rep_vals) {
        double d = v - out.per_level;
        var_acc.add(d * d);
    }
    if (reps > 1)
        out.std_error = std::sqrt(var_acc.value() /
                                  (static_cast<double>(reps) * (reps - 1.0)));
    return out;
}

} // namespace zetalab

#endif
