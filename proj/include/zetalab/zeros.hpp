#ifndef ZETALAB_ZEROS_HPP
#define ZETALAB_ZEROS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/special_functions.hpp"

namespace zetalab {

// von Mangoldt's zero count: N(T) = (T/2pi) log(T/2pi e)
inline double von_mangoldt_N(double T) {
    return T / kTwoPi * std::log(T / (kTwoPi * std::exp(1.0)));
}

// Riemann-Siegel theta by its asymptotic series
//   t/2 log(t/2pi) - t/2 - pi/8 + 1/48t + 7/5760t^3.
// Truncation error is below 1e-10 for t >= 25 and below 5e-8 down to t = 2pi
// (next omitted term is 31/80640 t^5).
inline double riemann_siegel_theta(double t) {
    if (t < 1.0) throw std::domain_error("riemann_siegel_theta: requires t >= 1");
    return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t);
}

namespace zeros_detail {

// exact theta from arg Gamma(1/4 + it/2) - (t/2) log pi; used below the range
// where the asymptotic series is reliable
inline double theta_exact_small(double t) {
    std::complex<double> z(0.25, 0.5 * t);
    return log_gamma(z).imag() - 0.5 * t * std::log(kPi);
}

inline double theta(double t) {
    return (t >= 10.0) ? riemann_siegel_theta(t) : theta_exact_small(t);
}

// B_{2k}/(2k)! for the Euler-Maclaurin zeta tail
inline constexpr double kEmCoef[12] = {
    8.33333333333333287e-02, -1.38888888888888894e-03, 3.30687830687830710e-05,
    -8.26719576719576754e-07, 2.08767569878681002e-08, -5.28419013868749322e-10,
    1.33825365306846789e-11, -3.38968029632258272e-13, 8.58606205627784517e-15,
    -2.17486869855806192e-16, 5.50900282836022953e-18, -1.39544646858125223e-19};

// Euler-Maclaurin evaluation of zeta(s).  Accurate to ~1e-13 relative for
// 0 < Re s <= 3 and |Im s| up to ~700 with the N chosen here.
inline std::complex<double> zeta_em(std::complex<double> s) {
    if (s == std::complex<double>(1.0, 0.0))
        throw PoleError("zeta_em: pole at s = 1");
    const double t = std::abs(s.imag());
    const int N = std::max(24, static_cast<int>(0.6 * t) + 16);
    std::complex<double> sum = 0.0;
    for (int n = 1; n < N; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    std::complex<double> Nms = std::exp(-s * logN); // N^{-s}
    sum += Nms * static_cast<double>(N) / (s - 1.0); // N^{1-s}/(s-1)
    sum += 0.5 * Nms;
    // correction terms: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    std::complex<double> poch = s;
    std::complex<double> npow = Nms / static_cast<double>(N); // N^{-s-1}
    const double invN2 = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= 12; ++k) {
        sum += kEmCoef[k - 1] * poch * npow;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow *= invN2;
    }
    return sum;
}

// Riemann-Siegel remainder shape C0(p) = cos(2pi(p^2 - p - 1/16))/cos(2pi p),
// with the removable singularities at p = 1/4, 3/4 handled by the
// derivative ratio.
inline double rs_c0(double p) {
    double den = std::cos(kTwoPi * p);
    double num = std::cos(kTwoPi * (p * p - p - 0.0625));
    if (std::abs(den) < 1e-5) {
        return std::sin(kTwoPi * (p * p - p - 0.0625)) * (2.0 * p - 1.0) /
               std::sin(kTwoPi * p);
    }
    return num / den;
}

inline constexpr double kEmCrossover = 500.0;

// log n and 1/sqrt(n) tables for the Riemann-Siegel main sum
inline const double* log_table(int n_max) {
    static std::vector<double> tab;
    if (static_cast<int>(tab.size()) < n_max + 1) {
        tab.resize(n_max + 1);
        for (int n = 1; n <= n_max; ++n) tab[n] = std::log(static_cast<double>(n));
    }
    return tab.data();
}

inline const double* rsqrt_table(int n_max) {
    static std::vector<double> tab;
    if (static_cast<int>(tab.size()) < n_max + 1) {
        tab.resize(n_max + 1);
        for (int n = 1; n <= n_max; ++n) tab[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return tab.data();
}

} // namespace zeros_detail

// Real rotated zeta Z(t) = e^{i theta(t)} zeta(1/2 + it).  Below t = 500 the
// value comes from Euler-Maclaurin (error ~1e-12, which is what certifies the
// low zeros to 1e-6 and better); above from the Riemann-Siegel main sum plus
// the first remainder term C0 (error ~0.05 t^{-3/4}, ample for sign scans).
inline double riemann_siegel_Z(double t) {
    if (t < 0.0) throw std::domain_error("riemann_siegel_Z: requires t >= 0");
    if (t < zeros_detail::kEmCrossover) {
        std::complex<double> z = zeros_detail::zeta_em({0.5, t});
        double th = (t == 0.0) ? 0.0 : zeros_detail::theta(t);
        return (std::exp(std::complex<double>(0.0, th)) * z).real();
    }
    const double th = zeros_detail::theta(t);
    const double q = std::sqrt(t / kTwoPi);
    const int m = static_cast<int>(q);
    const double p = q - m;
    const double* logn = zeros_detail::log_table(m);
    const double* rsq = zeros_detail::rsqrt_table(m);
    double sum = 0.0;
    for (int n = 1; n <= m; ++n) sum += std::cos(th - t * logn[n]) * rsq[n];
    double z = 2.0 * sum;
    double corr = std::pow(kTwoPi / t, 0.25) * zeros_detail::rs_c0(p);
    z += (m % 2 == 1) ? corr : -corr; // (-1)^{m+1}
    return z;
}

enum class ZeroSource { computed, loaded };

// Immutable ascending table of zero ordinates gamma_j with a certified
// height range.  Construction validates ordering/positivity; afterwards the
// table is safe for concurrent reads.
class ZeroTable {
public:
    ZeroTable() = default;
    ZeroTable(std::vector<double> ordinates, double t_max, ZeroSource source)
        : ordinates_(std::move(ordinates)), t_max_(t_max), source_(source) {
        for (std::size_t i = 0; i < ordinates_.size(); ++i) {
            if (ordinates_[i] <= 0.0)
                throw OrderError("ZeroTable: ordinates must be positive");
            if (i > 0 && ordinates_[i] <= ordinates_[i - 1])
                throw OrderError("ZeroTable: ordinates must be strictly increasing");
            if (ordinates_[i] > t_max_ * (1.0 + 1e-12))
                throw OrderError("ZeroTable: ordinate above certified height");
        }
    }

    const std::vector<double>& ordinates() const { return ordinates_; }
    double t_max() const { return t_max_; }
    ZeroSource source() const { return source_; }
    long count() const { return static_cast<long>(ordinates_.size()); }

private:
    std::vector<double> ordinates_;
    double t_max_ = 0.0;
    ZeroSource source_ = ZeroSource::computed;
};

// #{gamma <= T}; T must be inside the certified range.
inline long count_N(const ZeroTable& table, double T) {
    if (T > table.t_max() * (1.0 + 1e-12))
        throw RangeError("count_N: T exceeds certified table height");
    const auto& g = table.ordinates();
    return static_cast<long>(std::upper_bound(g.begin(), g.end(), T) - g.begin());
}

namespace zeros_detail {

inline double bisect_zero(double lo, double hi, double flo) {
    // flo is Z(lo); invariant: sign change within [lo, hi]
    for (int it = 0; it < 80 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = riemann_siegel_Z(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline void scan_cell(double a, double b, double fa, double fb, int depth,
                      std::vector<double>& out) {
    if ((fa < 0.0) != (fb < 0.0)) {
        out.push_back(bisect_zero(a, b, fa));
        return;
    }
    // no sign change: a close pair may hide inside if Z dips near zero
    // (Lehmer-type minima); refine when an endpoint is already small
    if (depth > 0 && std::min(std::abs(fa), std::abs(fb)) < 0.5) {
        const int k = 8;
        double prev = a, fprev = fa;
        for (int i = 1; i <= k; ++i) {
            double x = a + (b - a) * i / k;
            double fx = (i == k) ? fb : riemann_siegel_Z(x);
            scan_cell(prev, x, fprev, fx, depth - 1, out);
            prev = x;
            fprev = fx;
        }
    }
}

} // namespace zeros_detail

struct FindZerosOptions {
    double count_slack = 2.0; // C in |count - vonMangoldt| <= C log(t_max)
    int max_retries = 1;      // grid_step/4 reruns before MissedZeros
};

// Sign-change scan of Z over [t_min, t_max] on a uniform grid with local
// dip refinement, roots polished by bisection to 1e-9.  The zero count is
// cross-checked against von Mangoldt's formula; a failing check reruns the
// scan at grid_step/4 before raising MissedZeros.
inline ZeroTable find_zeros(double t_min, double t_max, double grid_step = 0.05,
                            const FindZerosOptions& opt = {}) {
    if (!(0.0 <= t_min && t_min < t_max))
        throw std::invalid_argument("find_zeros: need 0 <= t_min < t_max");
    if (grid_step > 0.1 || grid_step <= 0.0)
        throw std::invalid_argument("find_zeros: grid_step must be in (0, 0.1]");

    double step = grid_step;
    for (int attempt = 0;; ++attempt) {
        std::vector<double> zeros;
        const long n_cells = static_cast<long>(std::ceil((t_max - t_min) / step));
        double prev_t = t_min;
        double prev_f = riemann_siegel_Z(prev_t);
        for (long i = 1; i <= n_cells; ++i) {
            double t = std::min(t_min + step * i, t_max);
            double f = riemann_siegel_Z(t);
            zeros_detail::scan_cell(prev_t, t, prev_f, f, 2, zeros);
            prev_t = t;
            prev_f = f;
        }
        std::sort(zeros.begin(), zeros.end());
        zeros.erase(std::unique(zeros.begin(), zeros.end(),
                                [](double x, double y) { return std::abs(x - y) < 5e-9; }),
                    zeros.end());

        double expected = von_mangoldt_N(t_max) - (t_min > 0.0 ? von_mangoldt_N(t_min) : 0.0);
        double slack = opt.count_slack * std::log(std::max(t_max, std::exp(1.0)));
        if (std::abs(static_cast<double>(zeros.size()) - expected) <= slack)
            return ZeroTable(std::move(zeros), t_max, ZeroSource::computed);
        if (attempt >= opt.max_retries)
            throw MissedZeros("find_zeros: zero count " + std::to_string(zeros.size()) +
                              " vs von Mangoldt " + std::to_string(expected) +
                              " outside slack " + std::to_string(slack));
        step *= 0.25;
    }
}

// Merge zero tables computed on disjoint intervals; global ordering is
// re-validated by the ZeroTable constructor.
inline ZeroTable merge_tables(const std::vector<ZeroTable>& parts) {
    std::vector<double> all;
    double t_max = 0.0;
    for (const auto& p : parts) {
        all.insert(all.end(), p.ordinates().begin(), p.ordinates().end());
        t_max = std::max(t_max, p.t_max());
    }
    std::sort(all.begin(), all.end());
    return ZeroTable(std::move(all), t_max, ZeroSource::computed);
}

// Plain-text table: one ASCII decimal ordinate per line, LF terminated.
inline ZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_zeros: cannot open file: " + path);
    std::vector<double> zeros;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) {
            if (in.peek() == EOF) break; // trailing blank line
            throw ParseError("load_zeros: blank line", lineno);
        }
        const char* cs = line.c_str() + start;
        char* end = nullptr;
        double v = std::strtod(cs, &end);
        if (end == cs || *end != '\0' || !std::isfinite(v))
            throw ParseError("load_zeros: malformed ordinate '" + line + "'", lineno);
        zeros.push_back(v);
    }
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (zeros[i] <= 0.0)
            throw OrderError("load_zeros: nonpositive ordinate at line " + std::to_string(i + 1));
        if (i > 0 && zeros[i] <= zeros[i - 1])
            throw OrderError("load_zeros: ordinates not ascending at line " +
                             std::to_string(i + 1));
    }
    double t_max = zeros.empty() ? 0.0 : zeros.back();
    return ZeroTable(std::move(zeros), t_max, ZeroSource::loaded);
}

// Canonical serialization: fixed 9 decimals (the refinement tolerance), one
// ordinate per line.  load -> save round-trips canonical files byte-for-byte.
inline void save_zeros(const ZeroTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_zeros: cannot open file: " + path);
    char buf[64];
    for (double g : table.ordinates()) {
        std::snprintf(buf, sizeof buf, "%.9f\n", g);
        out << buf;
    }
}

// Dimensionless ordinates gamma~ = L*gamma/2pi with L = log T fixed.
struct UnfoldedZeros {
    std::vector<double> values;
    double L = 0.0;
    double T = 0.0;
};

inline UnfoldedZeros unfold(const ZeroTable& table, double T) {
    if (T < 10.0) throw std::invalid_argument("unfold: requires T >= 10");
    UnfoldedZeros u;
    u.T = T;
    u.L = std::log(T);
    u.values.reserve(table.ordinates().size());
    const double scale = u.L / kTwoPi;
    for (double g : table.ordinates()) u.values.push_back(scale * g);
    return u;
}

// Counting-function unfolding gamma~_j = N_vM(gamma_j): unit mean spacing at
// finite heights, used when empirical sums are compared against unit-density
// model integrals.
inline std::vector<double> unfold_counting(const ZeroTable& table) {
    std::vector<double> v;
    v.reserve(table.ordinates().size());
    for (double g : table.ordinates()) v.push_back(von_mangoldt_N(g));
    return v;
}

} // namespace zetalab

#endif
