#include "stark/schrodinger.hpp"

#include "stark/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace stark {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// y = (psi, psi', int psi^2, int x psi^2); q(x) = qa + qb x on the current interval.
using State = std::array<cplx, 4>;

struct Rhs {
    cplx qa;
    double qb;
    State operator()(double x, const State& y) const {
        const cplx p2 = y[0] * y[0];
        return {y[1], (qa + qb * x) * y[0], p2, x * p2};
    }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms)
        for (int i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
    return out;
}

// Integrate over [a, b] where the coefficient is linear; h_hint carries the step across calls.
void integrate_piece(const Rhs& rhs, State& y, double a, double b, double& h_hint, bool track_integrals) {
    const double span = b - a;
    if (span == 0.0) return;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double qmax = std::max(std::abs(rhs.qa + rhs.qb * a), std::abs(rhs.qa + rhs.qb * b));
    const double kscale = std::max(1.0, std::sqrt(qmax));
    double h = std::min(std::abs(span), h_hint > 0 ? h_hint : 0.05 / kscale);
    double x = a;
    State k1 = rhs(x, y);
    const double rtol = kPropagationTolerance;
    while (dir * (b - x) > 0) {
        bool last = false;
        if (h >= dir * (b - x)) {
            h = dir * (b - x);
            last = true;
        }
        const double hs = dir * h;
        const State k2 = rhs(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
        const State k3 = rhs(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(x + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs(x + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State yn = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(x + hs, yn);

        const int n = track_integrals ? 4 : 2;
        double num = 0.0, den = 1e-300;
        for (int i = 0; i < n; ++i) {
            const cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double w = i == 0 ? kscale : (i == 1 ? 1.0 : kscale * kscale);
            num += w * std::abs(e);
            den += w * std::max(std::abs(y[i]), std::abs(yn[i]));
        }
        const double err = num / (rtol * den);
        if (err <= 1.0) {
            x = last ? b : x + hs;
            y = yn;
            k1 = k7;
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (last) h_hint = h * fac;
            else h *= fac;
            continue;
        }
        h *= std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5) : 0.1;
        if (h < 1e-13 * std::max(1.0, std::abs(x)))
            throw NumericalError(Failure::step_underflow, "propagate: step size underflow");
    }
}

// Exact propagator for psi'' = q psi over length h (q constant).
void exact_step(cplx q, double h, cplx& psi, cplx& dpsi) {
    const cplx r = std::sqrt(q);
    const cplx rh = r * h;
    cplx ch, shc; // cosh(rh), sinh(rh)/r
    if (std::abs(rh) < 1e-3) {
        const cplx t = rh * rh;
        ch = 1.0 + t / 2.0 + t * t / 24.0 + t * t * t / 720.0;
        shc = h * (1.0 + t / 6.0 + t * t / 120.0 + t * t * t / 5040.0);
    } else {
        ch = std::cosh(rh);
        shc = std::sinh(rh) / r;
    }
    const cplx np = ch * psi + shc * dpsi;
    const cplx nd = q * shc * psi + ch * dpsi;
    psi = np;
    dpsi = nd;
}

// Knots between a and b (exclusive) in the direction of travel, plus the end point.
std::vector<double> knots_between(const Potential& p, double a, double b) {
    std::vector<double> out;
    for (double x : p.breakpoints())
        if ((x - a) * (b - x) > 0) out.push_back(x);
    if (b < a) std::reverse(out.begin(), out.end());
    out.push_back(b);
    return out;
}

void advance(const Potential& p, cplx z, double f, State& y, double a, double b, double& h_hint,
             bool track_integrals) {
    double x = a;
    for (double next : knots_between(p, a, b)) {
        const double mid = 0.5 * (x + next);
        if (f == 0.0 && !track_integrals && p.kind == PotentialKind::piecewise_constant) {
            exact_step(eval_potential(p, mid) - z, next - x, y[0], y[1]);
        } else {
            const LinearPiece lp = local_piece(p, mid);
            const Rhs rhs{lp.v0 - lp.v1 * lp.x_ref - z, lp.v1 + f};
            integrate_piece(rhs, y, x, next, h_hint, track_integrals);
        }
        x = next;
    }
}

} // namespace

BoundaryData propagate(const Potential& p, cplx z, double f, const BoundaryData& seed, double to) {
    State y{seed.psi, seed.dpsi, 0.0, 0.0};
    double h = 0.0;
    advance(p, z, f, y, seed.position, to, h, false);
    return {to, y[0], y[1]};
}

TransferMatrix transfer_matrix(const Potential& p, cplx z, double f, double from, double to) {
    const BoundaryData u = propagate(p, z, f, {from, 1.0, 0.0}, to);
    const BoundaryData v = propagate(p, z, f, {from, 0.0, 1.0}, to);
    return {u.psi, v.psi, u.dpsi, v.dpsi, from, to};
}

PathResult propagate_path(const Potential& p, cplx z, double f, const BoundaryData& seed,
                          const std::vector<double>& xs) {
    PathResult out;
    State y{seed.psi, seed.dpsi, 0.0, 0.0};
    double x = seed.position;
    double h = 0.0;
    for (double next : xs) {
        advance(p, z, f, y, x, next, h, true);
        x = next;
        out.states.push_back({x, y[0], y[1]});
    }
    out.int_psi2 = y[2];
    out.int_x_psi2 = y[3];
    return out;
}

} // namespace stark
