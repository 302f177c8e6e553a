#include "stark/resonance.hpp"

#include "stark/airy.hpp"
#include "stark/error.hpp"
#include "stark/parallel.hpp"
#include "stark/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stark {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

void check_field(double f) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("field strength must be positive");
}

cplx pow32(cplx w) { return w * std::sqrt(w); }

bool pole_near(cplx m) { return !(std::abs(m) >= 1e-12); }

} // namespace

MatchDirection default_direction(cplx k) {
    return std::arg(k) > -pi / 6.0 ? MatchDirection::seed_left : MatchDirection::seed_right;
}

const char* resonance_method_name(ResonanceMethod m) {
    switch (m) {
    case ResonanceMethod::newton: return "newton";
    case ResonanceMethod::scan: return "scan";
    case ResonanceMethod::string_refined: return "string_refined";
    }
    return "unknown";
}

AiryEnds airy_ends(double L, cplx z, double f) {
    check_field(f);
    const double c = std::cbrt(f);
    AiryEnds e;

    const cplx u1 = c * (-L - z / f);
    const AiryEval a1 = ai_rotated(u1, +1);
    e.m1 = a1.value_mantissa;
    e.d1 = c * a1.derivative_mantissa;
    e.sp1 = a1.scale_exponent;
    // (e^{2 pi i/3} u)^{3/2} continued as -u^{3/2}: agrees with the principal branch near the
    // positive k axis and has no cut while Im z < 0.
    e.sa1 = -(2.0 / 3.0) * pow32(u1);

    const cplx u2 = c * (L - z / f);
    const AiryEval a2 = ai(u2);
    e.m2 = a2.value_mantissa;
    e.d2 = c * a2.derivative_mantissa;
    e.sp2 = a2.scale_exponent;
    // Across the positive real z axis the principal branch of u2^{3/2} jumps; (z - fL)^{3/2}
    // does not, and the two agree below the axis.
    const cplx eta = z - f * L;
    e.sa2 = eta.real() > 0.0 ? (2.0 * I / (3.0 * f)) * pow32(eta) : e.sp2;
    return e;
}

Bilinear bilinear_form(const Potential& p, cplx z, double f) {
    const double L = p.L;
    const double c = std::cbrt(f);
    const AiryEnds e = airy_ends(L, z, f);
    const cplx uL = c * (L - z / f);

    // Cauchy data of the left solution at +L, as mantissa (psi, dpsi) times exp(seed).
    cplx psi, dpsi, seed;
    AiryEval a1L{};
    bool have_a1L = false;
    if (p.is_zero()) {
        // The exterior solution is global: nothing to propagate.
        a1L = ai_rotated(uL, +1);
        have_a1L = true;
        psi = a1L.value_mantissa;
        dpsi = c * a1L.derivative_mantissa;
        seed = a1L.scale_exponent;
    } else {
        const BoundaryData b = propagate(p, z, f, {-L, e.m1, e.d1}, L);
        psi = b.psi;
        dpsi = b.dpsi;
        seed = e.sp1;
    }

    // Direct form loses everything when psi is nearly parallel to A2. That happens exactly when
    // A2 = e^{i pi/3} Ai(e^{-2 pi i/3} u) + e^{-i pi/3} Ai(e^{2 pi i/3} u) is dominated by its
    // second term, in which case the split itself is free of cancellation.
    if (!have_a1L) a1L = ai_rotated(uL, +1);
    const AiryEval a1tL = ai_rotated(uL, -1);
    const double log_a2 = std::log(std::abs(e.m2)) + e.sp2.real();
    const double log_c1 = std::log(std::abs(a1L.value_mantissa)) + a1L.scale_exponent.real();
    const double log_c2 = std::log(std::abs(a1tL.value_mantissa)) + a1tL.scale_exponent.real();

    Bilinear out;
    if (std::isfinite(log_a2) && std::max(log_c1, log_c2) - log_a2 < 0.7) {
        const cplx p3 = std::polar(1.0, std::numbers::pi / 3.0);
        const cplx t1a = dpsi * a1L.value_mantissa, t1b = psi * c * a1L.derivative_mantissa;
        const cplx t2a = dpsi * a1tL.value_mantissa, t2b = psi * c * a1tL.derivative_mantissa;
        const cplx ref = a1L.scale_exponent.real() >= a1tL.scale_exponent.real() ? a1L.scale_exponent
                                                                                 : a1tL.scale_exponent;
        const cplx g1 = std::exp(a1L.scale_exponent - ref), g2 = std::exp(a1tL.scale_exponent - ref);
        // For V = 0, psi is A1 itself and W(psi, A1) vanishes identically.
        const cplx w1 = p.is_zero() ? cplx(0.0) : std::conj(p3) * (t1a - t1b) * g1;
        const cplx w2 = p3 * (t2a - t2b) * g2;
        out.mantissa = w1 + w2;
        // The split does not cancel; cancellation inside w1 only measures how close psi is to A1.
        out.scale = std::abs(w1) + std::abs(w2);
        out.log_factor = seed + ref;
        return out;
    }
    out.mantissa = dpsi * e.m2 - psi * e.d2;
    out.scale = std::abs(dpsi * e.m2) + std::abs(psi * e.d2);
    out.log_factor = seed + e.sp2;
    return out;
}

Residual matching_residual_z(const Potential& p, cplx z, double f, MatchDirection dir) {
    const double L = p.L;
    const AiryEnds e = airy_ends(L, z, f);
    const bool left = dir == MatchDirection::seed_left;
    if (pole_near(left ? e.m1 : e.m2)) {
        const Bilinear b = bilinear_form(p, z, f);
        const cplx g = std::exp(b.log_factor - (left ? e.sp1 + e.sa2 : e.sa1 + e.sp2));
        return {b.mantissa * g, b.scale * std::abs(g)};
    }
    if (left) {
        const BoundaryData b = propagate(p, z, f, {-L, 1.0, e.d1 / e.m1}, L);
        const cplx g = std::exp(e.sp2 - e.sa2);
        const cplx t1 = b.dpsi * e.m2, t2 = b.psi * e.d2;
        return {(t1 - t2) * g, (std::abs(t1) + std::abs(t2)) * std::abs(g)};
    }
    const BoundaryData b = propagate(p, z, f, {L, 1.0, e.d2 / e.m2}, -L);
    const cplx g = std::exp(e.sp1 - e.sa1);
    const cplx t1 = b.dpsi * e.m1, t2 = b.psi * e.d1;
    return {(t1 - t2) * g, (std::abs(t1) + std::abs(t2)) * std::abs(g)};
}

Residual matching_residual(const Potential& p, cplx k, double f, MatchDirection dir) {
    return matching_residual_z(p, k * k, f, dir);
}

namespace {

struct Evaluator {
    const Potential& p;
    double f;
    MatchDirection dir;
    bool in_z;
    cplx last_x;
    double last_scale = 1.0;

    cplx operator()(cplx x) {
        const Residual r = matching_residual_z(p, in_z ? x : x * x, f, dir);
        last_x = x;
        last_scale = r.scale;
        return r.value;
    }
};

Resonance refine_impl(const Potential& p, cplx guess, double f, const RefineOptions& opt, bool in_z) {
    check_field(f);
    const cplx k_guess = in_z ? std::sqrt(guess) : guess;
    if (std::abs(k_guess) == 0.0) throw DomainError("refine_root: zero initial guess");
    const MatchDirection dir = opt.dir.value_or(default_direction(k_guess));
    const double tol = opt.tol > 0 ? opt.tol : 1e-10 * std::abs(in_z ? guess : k_guess);
    Evaluator ev{p, f, dir, in_z, {}, 1.0};
    const double mag = std::abs(guess);

    auto leave = [&](cplx x) {
        const cplx k = in_z ? std::sqrt(x) : x;
        if (in_z) return !(std::abs(x) < 100.0 * (mag + 1.0)) || (x.real() > 0.0 && x.imag() > 0.05 * std::abs(x));
        return !(std::abs(k) < 100.0 * (mag + 1.0)) || std::abs(k) < 1e-8 || k.imag() > 0.05 * std::abs(k) ||
               k.real() < -0.05 * std::abs(k);
    };
    auto accept = [&](cplx x, cplx v) {
        if (ev.last_x != x) ev(x);
        return std::abs(v) <= 1e-9 * ev.last_scale;
    };
    const cplx x1 = guess * (1.0 + cplx(1e-4, -1e-4));
    const RootResult rr = muller(std::ref(ev), guess, x1, tol, opt.max_iter, accept, leave);
    const cplx root = rr.root;
    const cplx k = in_z ? std::sqrt(root) : root;
    const double ak = std::arg(k);
    if (!rr.converged) {
        if (leave(root) || !(ak > -pi / 2 - 1e-9 && ak <= 1e-12))
            throw NumericalError(Failure::escaped_domain, "refine_root left the fourth quadrant");
        throw NumericalError(Failure::no_convergence, "refine_root did not converge");
    }
    if (!(ak > -pi / 2 - 1e-9 && ak <= 0.0))
        throw NumericalError(Failure::escaped_domain, "refine_root converged outside the fourth quadrant");
    if (ev.last_x != root) ev(root);
    Resonance r;
    r.k = k;
    r.z = in_z ? root : k * k;
    r.residual = std::abs(rr.value) / ev.last_scale;
    r.method = ResonanceMethod::newton;
    r.f = f;
    return r;
}

} // namespace

Resonance refine_root(const Potential& p, cplx k_guess, double f, const RefineOptions& opt) {
    return refine_impl(p, k_guess, f, opt, false);
}

Resonance refine_root_z(const Potential& p, cplx z_guess, double f, const RefineOptions& opt) {
    return refine_impl(p, z_guess, f, opt, true);
}

namespace {

void check_rect(const Rect& r) {
    if (!(r.re0 < r.re1 && r.im0 < r.im1)) throw DomainError("empty rectangle " + r.str());
    if (!(r.re0 > 0.0 && r.im1 < 0.0)) throw DomainError("rectangle must lie in the open fourth quadrant");
}

PhaseSample bilinear_sample(const Potential& p, double f, cplx k) {
    const Bilinear b = bilinear_form(p, k * k, f);
    // log_factor is a sum of two terms -(2/3) w^{3/2}, w = c (x - z/f) rotated, x = -L and L;
    // each moves at |w|^{1/2} |dw/dk| = |w|^{1/2} 2 c |k| / f.
    const double c = std::cbrt(f);
    const cplx z = k * k;
    const double dw = 2.0 * c * std::abs(k) / f;
    const double rate = dw * (std::sqrt(std::abs(c * (-p.L - z / f))) + std::sqrt(std::abs(c * (p.L - z / f))));
    return {b.mantissa, b.log_factor.imag(), b.scale, rate};
}

WindingResult raw_count(const Potential& p, double f, const Rect& r) {
    return winding_number([&](cplx k) { return bilinear_sample(p, f, k); }, r, 64, 1e-11);
}

} // namespace

int count_zeros(const Potential& p, double f, const Rect& rect) {
    check_field(f);
    check_rect(rect);
    Rect r = rect;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const WindingResult w = raw_count(p, f, r);
        if (!w.boundary_zero) return w.winding;
        const double d = 1e-4 * (attempt + 1) * std::max(r.width(), r.height());
        r = {r.re0 + 0.6 * d, r.re1 - 0.4 * d, r.im0 + 0.5 * d, std::min(r.im1 - 0.7 * d, r.im1)};
    }
    throw NumericalError(Failure::boundary_zero, "resonance on the contour " + rect.str());
}

namespace {

struct Scanner {
    const Potential& p;
    double f;
    ScanOptions opt;

    // Four children of r with a split point moved off any boundary zeros.
    bool split(const Rect& r, std::array<Rect, 4>& kids, std::array<int, 4>& counts) const {
        const double shifts[4] = {0.0, 0.0137, -0.0211, 0.0293};
        for (double s : shifts) {
            const double xm = r.re0 + (0.5 + s) * r.width();
            const double ym = r.im0 + (0.5 - 0.7 * s) * r.height();
            kids = {Rect{r.re0, xm, r.im0, ym}, Rect{xm, r.re1, r.im0, ym}, Rect{r.re0, xm, ym, r.im1},
                    Rect{xm, r.re1, ym, r.im1}};
            bool ok = true;
            std::array<WindingResult, 4> w;
            parallel_for(4, opt.threads, [&](std::size_t i) { w[i] = raw_count(p, f, kids[i]); });
            for (int i = 0; i < 4; ++i) {
                ok = ok && !w[i].boundary_zero;
                counts[i] = w[i].winding;
            }
            if (ok) return true;
        }
        return false;
    }

    void scan(const Rect& r, int n, int depth, std::vector<Resonance>& out) const {
        if (n <= 0) return;
        if (n == 1) {
            try {
                Resonance res = refine_root(p, r.center(), f);
                if (r.contains(res.k, 1e-12)) {
                    res.method = ResonanceMethod::scan;
                    out.push_back(res);
                    return;
                }
            } catch (const NumericalError&) {
            }
        }
        if (depth >= opt.max_depth)
            throw NumericalError(Failure::depth_exceeded, "scan_rectangle: maximum depth reached at " + r.str());
        std::array<Rect, 4> kids;
        std::array<int, 4> counts{};
        if (!split(r, kids, counts))
            throw NumericalError(Failure::boundary_zero, "scan_rectangle: cannot split " + r.str());
        for (int i = 0; i < 4; ++i) scan(kids[i], counts[i], depth + 1, out);
    }
};

} // namespace

std::vector<Resonance> scan_rectangle(const Potential& p, double f, const Rect& rect, const ScanOptions& opt) {
    check_field(f);
    check_rect(rect);
    const int total = count_zeros(p, f, rect);
    Scanner s{p, f, opt};
    std::vector<Resonance> out;
    s.scan(rect, total, 0, out);
    // Deduplicate within ten times the refinement tolerance.
    std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
        return a.k.real() != b.k.real() ? a.k.real() < b.k.real() : a.k.imag() < b.k.imag();
    });
    std::vector<Resonance> uniq;
    for (const auto& r : out) {
        const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const Resonance& u) {
            return std::abs(u.k - r.k) <= 10.0 * 1e-10 * std::abs(r.k);
        });
        if (!dup) uniq.push_back(r);
    }
    if (static_cast<int>(uniq.size()) != total)
        throw NumericalError(Failure::no_convergence,
                             "scan_rectangle: located " + std::to_string(uniq.size()) + " of " +
                                 std::to_string(total) + " resonances in " + rect.str());
    return uniq;
}

} // namespace stark
