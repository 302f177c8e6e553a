#include "stark/contour.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace stark {

std::string Rect::str() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%.6g, %.6g] x [%.6g, %.6g]", re0, re1, im0, im1);
    return buf;
}

namespace {

using std::numbers::pi;

double wrap(double d) {
    d = std::remainder(d, 2.0 * pi);
    return d;
}

struct Tracker {
    const PhaseFn& fn;
    double zero_tol;
    int evaluations = 0;
    bool zero_hit = false;

    struct Point {
        double phase;
        double rate;
    };

    Point phase_at(cplx k) {
        const PhaseSample s = fn(k);
        ++evaluations;
        if (!(std::abs(s.value) > zero_tol * s.scale)) zero_hit = true;
        return {std::arg(s.value) + s.extra_phase, s.rate};
    }

    // Accumulated continuous phase change from a to b.
    double segment(cplx a, Point pa, cplx b, Point pb, int depth) {
        const double d = wrap(pb.phase - pa.phase);
        const bool resolved = std::max(pa.rate, pb.rate) * std::abs(b - a) < 0.5 * pi;
        if ((std::abs(d) < 0.5 * pi && resolved) || depth > 40 || zero_hit) {
            if (depth > 40) zero_hit = true;
            return d;
        }
        const cplx m = 0.5 * (a + b);
        const Point pm = phase_at(m);
        return segment(a, pa, m, pm, depth + 1) + segment(m, pm, b, pb, depth + 1);
    }
};

} // namespace

WindingResult winding_number(const PhaseFn& fn, const Rect& r, int min_per_edge, double zero_tol) {
    Tracker t{fn, zero_tol};
    const cplx corners[5] = {{r.re0, r.im0}, {r.re1, r.im0}, {r.re1, r.im1}, {r.re0, r.im1}, {r.re0, r.im0}};
    double total = 0.0;
    const Tracker::Point p0 = t.phase_at(corners[0]);
    Tracker::Point prev_phase = p0;
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[e + 1];
        cplx prev = a;
        for (int i = 1; i <= min_per_edge; ++i) {
            const cplx k = (i == min_per_edge) ? b : a + (b - a) * (static_cast<double>(i) / min_per_edge);
            const Tracker::Point ph = (e == 3 && i == min_per_edge) ? p0 : t.phase_at(k);
            total += t.segment(prev, prev_phase, k, ph, 0);
            prev = k;
            prev_phase = ph;
        }
    }
    WindingResult out;
    out.winding = static_cast<int>(std::lround(total / (2.0 * pi)));
    out.boundary_zero = t.zero_hit;
    out.evaluations = t.evaluations;
    return out;
}

RootResult muller(const std::function<cplx(cplx)>& fn, cplx x0, cplx x1, double tol, int max_iter,
                  const std::function<bool(cplx, cplx)>& accept, const std::function<bool(cplx)>& leave) {
    RootResult res;
    cplx f0 = fn(x0), f1 = fn(x1);
    if (std::abs(f0) < std::abs(f1)) {
        std::swap(x0, x1);
        std::swap(f0, f1);
    }
    // Secant step to get the third point.
    cplx x2 = (f1 == f0) ? x1 + (x1 - x0) : x1 - f1 * (x1 - x0) / (f1 - f0);
    if (leave(x2)) {
        res.root = x2;
        return res;
    }
    cplx f2 = fn(x2);
    for (int it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        const cplx h1 = x1 - x0, h2 = x2 - x1;
        const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
        const cplx a = (d2 - d1) / (h2 + h1);
        const cplx b = a * h2 + d2;
        const cplx disc = std::sqrt(b * b - 4.0 * a * f2);
        const cplx den = std::abs(b + disc) > std::abs(b - disc) ? b + disc : b - disc;
        cplx step;
        if (std::abs(den) > 0.0 && std::isfinite(den.real()) && std::isfinite(den.imag()))
            step = -2.0 * f2 / den;
        else if (d2 != 0.0)
            step = -f2 / d2;
        else
            step = h2;
        // Guard against wild jumps from a flat parabola.
        const double cap = 10.0 * std::max(std::abs(h2), std::abs(h1));
        if (std::abs(step) > cap && cap > 0.0) step *= cap / std::abs(step);
        const cplx x3 = x2 + step;
        if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag()) || leave(x3)) {
            res.root = x3;
            res.value = f2;
            return res;
        }
        const cplx f3 = fn(x3);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f3;
        if (std::abs(step) <= tol && accept(x2, f2)) {
            res.root = x2;
            res.value = f2;
            res.converged = true;
            return res;
        }
        if (f2 == 0.0) {
            res.root = x2;
            res.value = f2;
            res.converged = true;
            return res;
        }
    }
    res.root = x2;
    res.value = f2;
    return res;
}

} // namespace stark
