#ifndef ZETALAB_QUADRATURE_HPP
#define ZETALAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "zetalab/kahan.hpp"

namespace zetalab {

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation/size controls for the correlation-integral quadratures.
// radius is where the integrator splits the compactified axis: outside
// |y| > radius the kernels are in their algebraic tails.
struct QuadratureSpec {
    double radius = 60.0;
    double rel_tol = 1e-7;
    int max_cells = 400000;

    void validate() const {
        if (radius < 20.0) throw std::invalid_argument("QuadratureSpec: radius must be >= 20");
        if (rel_tol > 1e-6) throw std::invalid_argument("QuadratureSpec: rel_tol must be <= 1e-6");
        if (max_cells < 64) throw std::invalid_argument("QuadratureSpec: max_cells too small");
    }
};

struct QuadResult {
    double value = 0.0;
    double abserr = 0.0;
    long cells = 0;
    bool converged = true;
};

namespace quad_detail {

// 15-point Gauss-Kronrod pair (QUADPACK dqk15 constants).  The odd-index
// nodes are the embedded 7-point Gauss rule; both estimates come from one
// sweep and their difference is the error estimate.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Cell1 {
    double a, b, value, err;
    long id;
};

template <class F>
Cell1 eval_cell1(const F& f, double a, double b, long id) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    double resk = kWgk[7] * fv[7];
    for (int j = 0; j < 7; ++j) resk += kWgk[j] * (fv[j] + fv[14 - j]);
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 3; ++j) {
        int i = 2 * j + 1;
        resg += kWg[j] * (fv[i] + fv[14 - i]);
    }
    return {a, b, resk * h, std::abs(resk - resg) * h, id};
}

template <class Cell>
struct WorseErr {
    bool operator()(const Cell& x, const Cell& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.id > y.id; // deterministic tie-break
    }
};

} // namespace quad_detail

// Globally adaptive 1-D integration over the given breakpoint chain.
// Splits the worst cell until sum(err) <= max(abs_tol, rel_tol*|integral|).
template <class F>
QuadResult integrate_adaptive_seeded(const F& f, const std::vector<double>& breaks,
                                     double rel_tol, double abs_tol = 0.0,
                                     long max_cells = 100000) {
    using quad_detail::Cell1;
    std::vector<Cell1> cells;
    long next_id = 0;
    double total = 0.0, toterr = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        cells.push_back(quad_detail::eval_cell1(f, breaks[i], breaks[i + 1], next_id++));
        total += cells.back().value;
        toterr += cells.back().err;
    }
    quad_detail::WorseErr<Cell1> worse;
    std::make_heap(cells.begin(), cells.end(), worse);
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) &&
           static_cast<long>(cells.size()) < max_cells) {
        std::pop_heap(cells.begin(), cells.end(), worse);
        Cell1 w = cells.back();
        cells.pop_back();
        total -= w.value;
        toterr -= w.err;
        double mid = 0.5 * (w.a + w.b);
        for (double lo : {w.a, mid}) {
            double hi = (lo == w.a) ? mid : w.b;
            cells.push_back(quad_detail::eval_cell1(f, lo, hi, next_id++));
            total += cells.back().value;
            toterr += cells.back().err;
            std::push_heap(cells.begin(), cells.end(), worse);
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell1& x, const Cell1& y) { return x.a < y.a; });
    KahanSum v, e;
    for (const auto& cl : cells) { v.add(cl.value); e.add(cl.err); }
    QuadResult out;
    out.value = v.value();
    out.abserr = e.value();
    out.cells = static_cast<long>(cells.size());
    out.converged = out.abserr <= std::max(abs_tol, rel_tol * std::abs(out.value)) *
                                      (1.0 + 1e-12) + 1e-300;
    return out;
}

template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double rel_tol,
                              double abs_tol = 0.0, long max_cells = 100000) {
    return integrate_adaptive_seeded(f, std::vector<double>{a, b}, rel_tol, abs_tol,
                                     max_cells);
}

// Whole-line integral of a decaying integrand via y = scale*tan(phi).
// The Jacobian scale*(1+tan^2) cancels a Lorentzian of width ~scale exactly,
// so kernels of that shape become bounded on the compact phi-domain.
template <class F>
QuadResult integrate_line(const F& f, double scale, const QuadratureSpec& spec) {
    spec.validate();
    const double half_pi = 1.57079632679489661923;
    auto g = [&](double phi) {
        double ty = std::tan(phi);
        return f(scale * ty) * scale * (1.0 + ty * ty);
    };
    double phi_r = std::atan(spec.radius / scale);
    std::vector<double> breaks;
    for (int i = 8; i >= 1; --i) breaks.push_back(-phi_r * i / 8.0);
    breaks.push_back(0.0);
    for (int i = 1; i <= 8; ++i) breaks.push_back(phi_r * i / 8.0);
    breaks.insert(breaks.begin(), -half_pi);
    breaks.push_back(half_pi);
    return integrate_adaptive_seeded(g, breaks, spec.rel_tol, 0.0, spec.max_cells);
}

namespace quad_detail {

struct Cell2 {
    double ax, bx, ay, by, value, err;
    long id;
};

template <class F>
Cell2 eval_cell2(const F& f, double ax, double bx, double ay, double by, long id) {
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double nx[15], ny[15];
    for (int j = 0; j < 7; ++j) {
        nx[j] = cx - hx * kXgk[j];
        nx[14 - j] = cx + hx * kXgk[j];
        ny[j] = cy - hy * kXgk[j];
        ny[14 - j] = cy + hy * kXgk[j];
    }
    nx[7] = cx;
    ny[7] = cy;
    double wk[15] = {}, wgs[15] = {};
    for (int j = 0; j < 7; ++j) wk[j] = wk[14 - j] = kWgk[j];
    wk[7] = kWgk[7];
    wgs[7] = kWg[3];
    wgs[1] = wgs[13] = kWg[0];
    wgs[3] = wgs[11] = kWg[1];
    wgs[5] = wgs[9] = kWg[2];

    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 15; ++i) {
        double rowk = 0.0, rowg = 0.0;
        for (int j = 0; j < 15; ++j) {
            double fij = f(nx[i], ny[j]);
            rowk += wk[j] * fij;
            if (wgs[j] != 0.0) rowg += wgs[j] * fij;
        }
        resk += wk[i] * rowk;
        if (wgs[i] != 0.0) resg += wgs[i] * rowg;
    }
    resk *= hx * hy;
    resg *= hx * hy;
    return {ax, bx, ay, by, resk, std::abs(resk - resg), id};
}

} // namespace quad_detail

// Globally adaptive 2-D tensor Gauss-Kronrod integration; seeds are the grid
// cells of the given axis breakpoints, the worst cell splits its longer side.
template <class F>
QuadResult integrate_adaptive_2d_seeded(const F& f, const std::vector<double>& bx,
                                        const std::vector<double>& by, double rel_tol,
                                        double abs_tol = 0.0, long max_cells = 400000) {
    using quad_detail::Cell2;
    std::vector<Cell2> cells;
    long next_id = 0;
    double total = 0.0, toterr = 0.0;
    for (std::size_t i = 0; i + 1 < bx.size(); ++i)
        for (std::size_t j = 0; j + 1 < by.size(); ++j) {
            cells.push_back(
                quad_detail::eval_cell2(f, bx[i], bx[i + 1], by[j], by[j + 1], next_id++));
            total += cells.back().value;
            toterr += cells.back().err;
        }
    quad_detail::WorseErr<Cell2> worse;
    std::make_heap(cells.begin(), cells.end(), worse);
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) &&
           static_cast<long>(cells.size()) < max_cells) {
        std::pop_heap(cells.begin(), cells.end(), worse);
        Cell2 w = cells.back();
        cells.pop_back();
        total -= w.value;
        toterr -= w.err;
        Cell2 c1, c2;
        if (w.bx - w.ax >= w.by - w.ay) {
            double mid = 0.5 * (w.ax + w.bx);
            c1 = quad_detail::eval_cell2(f, w.ax, mid, w.ay, w.by, next_id++);
            c2 = quad_detail::eval_cell2(f, mid, w.bx, w.ay, w.by, next_id++);
        } else {
            double mid = 0.5 * (w.ay + w.by);
            c1 = quad_detail::eval_cell2(f, w.ax, w.bx, w.ay, mid, next_id++);
            c2 = quad_detail::eval_cell2(f, w.ax, w.bx, mid, w.by, next_id++);
        }
        for (const Cell2& c : {c1, c2}) {
            cells.push_back(c);
            total += c.value;
            toterr += c.err;
            std::push_heap(cells.begin(), cells.end(), worse);
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell2& x, const Cell2& y) {
        if (x.ax != y.ax) return x.ax < y.ax;
        if (x.ay != y.ay) return x.ay < y.ay;
        return x.id < y.id;
    });
    KahanSum v, e;
    for (const auto& cl : cells) { v.add(cl.value); e.add(cl.err); }
    QuadResult out;
    out.value = v.value();
    out.abserr = e.value();
    out.cells = static_cast<long>(cells.size());
    out.converged = out.abserr <= std::max(abs_tol, rel_tol * std::abs(out.value)) *
                                      (1.0 + 1e-12) + 1e-300;
    return out;
}

template <class F>
QuadResult integrate_adaptive_2d(const F& f, double ax, double bx, double ay, double by,
                                 double rel_tol, double abs_tol = 0.0,
                                 long max_cells = 400000) {
    return integrate_adaptive_2d_seeded(f, std::vector<double>{ax, bx},
                                        std::vector<double>{ay, by}, rel_tol, abs_tol,
                                        max_cells);
}

// Whole-plane integral via per-axis tangent maps (u,v) = scale*tan(phi).
template <class F>
QuadResult integrate_plane(const F& f, double scale_u, double scale_v,
                           const QuadratureSpec& spec) {
    spec.validate();
    const double half_pi = 1.57079632679489661923;
    auto g = [&](double pu, double pv) {
        double tu = std::tan(pu), tv = std::tan(pv);
        return f(scale_u * tu, scale_v * tv) * scale_u * (1.0 + tu * tu) * scale_v *
               (1.0 + tv * tv);
    };
    double pru = std::atan(spec.radius / scale_u);
    double prv = std::atan(spec.radius / scale_v);
    auto axis_breaks = [&](double pr) {
        std::vector<double> b = {-half_pi};
        for (int i = 4; i >= 1; --i) b.push_back(-pr * i / 4.0);
        b.push_back(0.0);
        for (int i = 1; i <= 4; ++i) b.push_back(pr * i / 4.0);
        b.push_back(half_pi);
        return b;
    };
    return integrate_adaptive_2d_seeded(g, axis_breaks(pru), axis_breaks(prv),
                                        spec.rel_tol, 0.0, spec.max_cells);
}

// Fixed 15-point Kronrod estimate (no subdivision): used for the smooth
// density-tail integrals where an O(1)-cost deterministic rule is wanted.
// Works for any value type with double scalar multiplication (double,
// std::complex<double>).
template <class F>
auto gk15_fixed(const F& f, double a, double b) -> decltype(f(a)) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    auto acc = quad_detail::kWgk[7] * f(c);
    for (int j = 0; j < 7; ++j)
        acc += quad_detail::kWgk[j] *
               (f(c - h * quad_detail::kXgk[j]) + f(c + h * quad_detail::kXgk[j]));
    return h * acc;
}

} // namespace zetalab

#endif
