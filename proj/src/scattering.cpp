#include "stark/scattering.hpp"

#include "stark/error.hpp"
#include "stark/schrodinger.hpp"

#include <cmath>
#include <numbers>

namespace stark {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

void check_k(cplx k) {
    if (std::abs(k) < 1e-12) throw NumericalError(Failure::zero_wavenumber, "scattering data undefined at k = 0");
}

} // namespace

Amplitudes amplitudes(const Potential& p, cplx k) {
    check_k(k);
    const double L = p.L;
    const TransferMatrix M = transfer_matrix(p, k * k, 0.0, -L, L);
    const cplx eL = std::exp(I * k * L), emL = std::exp(-I * k * L);
    const cplx ik2 = 2.0 * I * k;

    // Left seed e^{-ikx}.
    const cplx s0 = eL, s1 = -I * k * eL;
    const cplx psi = M.m11 * s0 + M.m12 * s1;
    const cplx dpsi = M.m21 * s0 + M.m22 * s1;
    Amplitudes a;
    a.k = k;
    a.c1 = (dpsi + I * k * psi) * emL / ik2;
    a.c2 = (I * k * psi - dpsi) * eL / ik2;
    if (!(std::abs(a.c2) > 1e-14 * (1.0 + std::abs(a.c1))))
        throw NumericalError(Failure::transmission_pole, "c2 vanishes: pole of the scattering matrix");
    a.t = 1.0 / a.c2;
    a.rho = a.c1 / a.c2;

    // Right seed e^{ikx}, carried back with the inverse (det M = 1).
    const cplx r0 = eL, r1 = I * k * eL;
    const cplx lpsi = M.m22 * r0 - M.m12 * r1;
    const cplx ldpsi = -M.m21 * r0 + M.m11 * r1;
    const cplx amp_in = (ldpsi + I * k * lpsi) * eL / ik2;
    const cplx amp_out = (I * k * lpsi - ldpsi) * emL / ik2;
    a.t_right_seed = 1.0 / amp_in;
    a.r_left = amp_out / amp_in;
    return a;
}

cplx reflection_F(const Potential& p, cplx k) { return 2.0 * I * k * amplitudes(p, k).rho; }

cplx F_numerator(const Potential& p, cplx k) {
    const double L = p.L;
    const cplx eL = std::exp(I * k * L);
    const BoundaryData b = propagate(p, k * k, 0.0, {-L, eL, -I * k * eL}, L);
    return b.dpsi + I * k * b.psi;
}

cplx F_derivative(const Potential& p, cplx k, double radius, int points) {
    cplx acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const cplx e = std::polar(1.0, 2.0 * pi * j / points);
        acc += reflection_F(p, k + radius * e) / e;
    }
    return acc / (static_cast<double>(points) * radius);
}

UnitarityCheck unitarity(const Amplitudes& a) {
    UnitarityCheck u;
    const double pr = std::abs(std::norm(a.rho) + std::norm(a.t) - 1.0);
    const double pl = std::abs(std::norm(a.r_left) + std::norm(a.t_right_seed) - 1.0);
    u.probability = std::max(pr, pl);
    u.cross = std::abs(std::conj(a.rho) * a.t_right_seed + a.r_left * std::conj(a.t));
    u.reciprocity = std::abs(a.t - a.t_right_seed);
    return u;
}

namespace {

struct FZeroSearch {
    const Potential& p;
    std::vector<FZero> found;

    PhaseSample sample(cplx k) const {
        const double L = p.L;
        const cplx eL = std::exp(I * k * L);
        const BoundaryData b = propagate(p, k * k, 0.0, {-L, eL, -I * k * eL}, L);
        const cplx n = b.dpsi + I * k * b.psi;
        return {n, 0.0, std::abs(b.dpsi) + std::abs(k * b.psi)};
    }

    WindingResult count(Rect r) const {
        for (int attempt = 0; attempt < 4; ++attempt) {
            const WindingResult w = winding_number([&](cplx k) { return sample(k); }, r, 32, 1e-10);
            if (!w.boundary_zero) return w;
            // Jitter the edges by a small deterministic amount and retry.
            const double d = 1e-3 * (attempt + 1) * std::max(r.width(), r.height());
            r = {r.re0 - d, r.re1 + 0.7 * d, r.im0 - 0.3 * d, r.im1 + 0.5 * d};
        }
        throw NumericalError(Failure::boundary_zero, "F vanishes on the contour " + r.str());
    }

    bool newton(cplx k, int order, cplx& root) const {
        for (int it = 0; it < 60; ++it) {
            const cplx F = reflection_F(p, k);
            const double rad = std::min(1e-3, 0.1 * std::abs(k));
            const cplx dF = F_derivative(p, k, rad, 16);
            if (dF == 0.0) return false;
            const cplx step = static_cast<double>(order) * F / dF;
            k -= step;
            if (std::abs(step) <= 1e-12 * std::abs(k)) {
                root = k;
                return true;
            }
        }
        return false;
    }

    void search(const Rect& r, int depth) {
        const int n = count(r).winding;
        if (n <= 0) return;
        const double size = std::max(r.width(), r.height());
        if (n == 1 || depth >= 12 || size < 1e-6) {
            const int order = std::min(n, 3);
            cplx root;
            if (newton(r.center(), order, root) && r.contains(root, 1e-9)) {
                found.push_back({root, order});
                return;
            }
            if (depth >= 12 || size < 1e-6) {
                found.push_back({r.center(), order});
                return;
            }
        }
        const double xm = 0.5 * (r.re0 + r.re1), ym = 0.5 * (r.im0 + r.im1);
        search({r.re0, xm, r.im0, ym}, depth + 1);
        search({xm, r.re1, r.im0, ym}, depth + 1);
        search({r.re0, xm, ym, r.im1}, depth + 1);
        search({xm, r.re1, ym, r.im1}, depth + 1);
    }
};

} // namespace

std::vector<FZero> find_F_zeros(const Potential& p, const Rect& window) {
    const cplx corners[4] = {{window.re0, window.im0}, {window.re1, window.im0}, {window.re0, window.im1},
                             {window.re1, window.im1}};
    for (cplx c : corners) {
        const double a = std::arg(c);
        if (!(a > -pi / 3.0 && a < 0.0)) throw DomainError("find_F_zeros: window must lie in -pi/3 < arg k < 0");
    }
    const double dx = std::max({0.0, window.re0, -window.re1});
    const double dy = std::max({0.0, window.im0, -window.im1});
    if (std::hypot(dx, dy) <= 0.1) throw DomainError("find_F_zeros: window must satisfy |k| > 0.1");

    FZeroSearch s{p, {}};
    // F identically zero: the numerator vanishes relative to its terms everywhere.
    bool all_zero = true;
    for (int i = 0; i < 16 && all_zero; ++i) {
        const cplx k = window.center() + cplx(window.width() * (0.37 * i / 16.0 - 0.15),
                                              window.height() * (0.29 - 0.41 * i / 16.0));
        const PhaseSample ps = s.sample(k);
        if (std::abs(ps.value) > 1e-12 * ps.scale) all_zero = false;
    }
    if (all_zero) throw NumericalError(Failure::degenerate, "F vanishes identically");
    s.search(window, 0);
    return s.found;
}

} // namespace stark
