#include "stark/asymptotics.hpp"

#include "stark/airy.hpp"
#include "stark/error.hpp"
#include "stark/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace stark {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

void check_field(double f) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("field strength must be positive");
}

// log(i G) continued along a real parameter, starting from the principal branch.
class BranchTracker {
public:
    BranchTracker(std::function<cplx(double)> G, double start, double max_step)
        : G_(std::move(G)), x_(start), h_(max_step), last_(std::log(I * G_(start))) {}

    cplx at(double x) {
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(x - x_) / h_)));
        const double x0 = x_;
        for (int i = 1; i <= n; ++i) {
            const double xi = x0 + (x - x0) * i / n;
            cplx v = std::log(I * G_(xi));
            v.imag(v.imag() + 2.0 * pi * std::round((last_.imag() - v.imag()) / (2.0 * pi)));
            last_ = v;
        }
        x_ = x;
        return last_;
    }

private:
    std::function<cplx(double)> G_;
    double x_, h_;
    cplx last_;
};

std::pair<int, int> j_range(double f, double lo, double hi) {
    const double c = 2.0 / (3.0 * pi * f);
    return {static_cast<int>(std::ceil(c * lo * lo * lo - 1e-12)), static_cast<int>(std::floor(c * hi * hi * hi + 1e-12))};
}

void check_window(double lo, double hi) {
    if (!(lo > 0.0 && hi > lo) || !std::isfinite(hi)) throw DomainError("window must satisfy 0 < lo < hi");
}

cplx cube_root_near(cplx w, cplx k) {
    const cplx r = std::pow(w, 1.0 / 3.0);
    cplx best = r;
    for (int s = 1; s < 3; ++s) {
        const cplx c = r * std::polar(1.0, 2.0 * pi * s / 3.0);
        if (std::abs(c - k) < std::abs(best - k)) best = c;
    }
    return best;
}

} // namespace

const char* string_family_name(StringFamily f) {
    switch (f) {
    case StringFamily::positive_axis: return "positive_axis";
    case StringFamily::line_2pi3: return "line";
    case StringFamily::reflection_zero: return "reflection_zero";
    case StringFamily::bound_state: return "bound_state";
    }
    return "unknown";
}

double string_eta0(double f, int j) { return std::cbrt(1.5 * pi * f * j); }

std::vector<StringPrediction> string_positive_axis(const Potential& p, double f, double kmin, double kmax) {
    check_field(f);
    check_window(kmin, kmax);
    auto G = [&p](double k) { return -amplitudes(p, k).rho; };
    for (int i = 0; i <= 64; ++i) {
        const double k = kmin + (kmax - kmin) * i / 64.0;
        if (std::abs(G(k)) < 1e-6)
            throw NumericalError(Failure::f_too_small, "reflection nearly vanishes on the window");
    }
    BranchTracker log_iG(G, kmin, (kmax - kmin) / 64.0);
    std::vector<StringPrediction> out;
    const auto [j0, j1] = j_range(f, kmin, kmax);
    for (int j = j0; j <= j1; ++j) {
        StringPrediction s;
        s.family = StringFamily::positive_axis;
        s.j = j;
        s.eta0 = string_eta0(f, j);
        const cplx lg = log_iG.at(s.eta0);
        s.l = -lg.real();
        s.theta = lg.imag();
        s.k_pred = s.eta0 - 0.25 * f * (s.theta + I * s.l) / (s.eta0 * s.eta0);
        s.order_estimate = f * f;
        out.push_back(s);
    }
    return out;
}

cplx line_G(const Potential& p, cplx k) {
    const double L = p.L;
    const BoundaryData b = propagate(p, k * k, 0.0, {L, 1.0, -I * k}, -L);
    const cplx den = b.dpsi + I * k * b.psi;
    if (std::abs(den) <= 1e-6 * (std::abs(b.dpsi) + std::abs(k * b.psi)))
        throw NumericalError(Failure::g_pole, "line G has a pole here");
    return std::exp(-2.0 * I * k * L) * (b.dpsi - I * k * b.psi) / den;
}

std::vector<StringPrediction> string_line(const Potential& p, double f, double eta_min, double eta_max) {
    check_field(f);
    check_window(eta_min, eta_max);
    // Without a potential the outgoing seed never reflects and G has no finite value.
    if (p.is_zero()) throw NumericalError(Failure::degenerate, "no line string without a potential");
    const cplx rot = std::polar(1.0, -pi / 3.0);
    auto G = [&](double eta) {
        const cplx g = line_G(p, rot * eta);
        if (std::abs(g) > 1e6) throw NumericalError(Failure::g_pole, "line G near a pole");
        if (std::abs(g) < 1e-14) throw NumericalError(Failure::degenerate, "line G vanishes: no reflection");
        return g;
    };
    BranchTracker log_iG(G, eta_min, (eta_max - eta_min) / 64.0);
    std::vector<StringPrediction> out;
    const auto [j0, j1] = j_range(f, eta_min, eta_max);
    for (int j = j0; j <= j1; ++j) {
        StringPrediction s;
        s.family = StringFamily::line_2pi3;
        s.j = j;
        s.eta0 = string_eta0(f, j);
        const cplx lg = log_iG.at(s.eta0);
        s.l = -lg.real();
        s.theta = lg.imag();
        s.k_pred = rot * (s.eta0 - 0.25 * f * (s.theta + I * s.l) / (s.eta0 * s.eta0));
        s.order_estimate = f * f;
        out.push_back(s);
    }
    return out;
}

cplx exact_exponential_ratio(const Potential& p, cplx k, double f) {
    check_field(f);
    const double L = p.L;
    const double c = std::cbrt(f);
    const cplx z = k * k;
    const OscillatoryParts a = decompose_oscillatory(c * (L - z / f));
    const AiryEnds e = airy_ends(L, z, f);
    const BoundaryData b = propagate(p, z, f, {-L, e.m1, e.d1}, L);
    const cplx num = b.dpsi * a.coeff_minus - b.psi * c * a.dcoeff_minus;
    const cplx den = b.dpsi * a.coeff_plus - b.psi * c * a.dcoeff_plus;
    return -num / den;
}

StringPrediction string_fixed_point(const Potential& p, double f, int j, cplx k_start, const FixedPointOptions& opt) {
    check_field(f);
    if (opt.nearby_zero) {
        const double guard = std::pow(f, (1.0 - opt.epsilon) / opt.nearby_zero->order);
        if (std::abs(k_start - opt.nearby_zero->k) < guard)
            throw NumericalError(Failure::guard_violation, "fixed point started inside the reflection-zero guard");
    }
    const double L = p.L;
    cplx k = k_start;
    cplx target = (4.0 * I / (3.0 * f)) * k * k * k - 2.0 * pi * I * static_cast<double>(j);
    cplx lk = 0.0;
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        const cplx phi = exact_exponential_ratio(p, k, f);
        const cplx eta = k * k - f * L;
        lk = std::log(phi) - (4.0 * I / (3.0 * f)) * (eta * std::sqrt(eta) - k * k * k);
        lk.imag(lk.imag() + 2.0 * pi * std::round((target.imag() - lk.imag()) / (2.0 * pi)));
        target = lk;
        const cplx w = 1.5 * pi * f * j - 0.75 * I * f * lk;
        const cplx next = cube_root_near(w, k);
        const double step = std::abs(next - k);
        if (opt.steps) opt.steps->push_back(step);
        k = next;
        if (!std::isfinite(step)) break;
        if (step < opt.tol * std::abs(k)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericalError(Failure::no_convergence, "string fixed point did not converge");
    const Residual r = matching_residual(p, k, f, default_direction(k));
    if (!(std::abs(r.value) <= 1e-8 * r.scale))
        throw NumericalError(Failure::no_convergence, "string fixed point is not a resonance");

    StringPrediction s;
    s.family = StringFamily::positive_axis;
    s.j = j;
    s.k_pred = k;
    s.eta0 = string_eta0(f, j);
    s.l = lk.real();
    s.theta = -lk.imag();
    s.order_estimate = 0.0;
    return s;
}

TrackedZero track_reflection_zero_resonance(const Potential& p, double f, const FZero& zero) {
    check_field(f);
    if (zero.order != 1) throw DomainError("tracking needs a simple reflection zero");
    TrackedZero t;
    double fs = f;
    for (int i = 0; i < 3; ++i, fs *= 0.5) {
        Resonance r = refine_root(p, zero.k, fs);
        t.distance[i] = std::abs(r.k - zero.k);
        if (i == 0) t.resonance = r;
    }
    t.monotone = t.distance[0] > t.distance[1] && t.distance[1] > t.distance[2];
    return t;
}

BoundStateResonance bound_state_resonance(const Potential& p, double f, const BoundState& bs) {
    check_field(f);
    if ((4.0 / (3.0 * f)) * std::pow(-bs.lambda0, 1.5) > kWidthExponentLimit)
        throw NumericalError(Failure::width_underflow, "width below double precision at this field");
    BoundStateResonance out;
    out.predicted_width = predicted_width(bs, f);
    RefineOptions o;
    o.dir = MatchDirection::seed_right;
    const cplx seed(bs.lambda0 + f * bs.lambda1, -out.predicted_width);
    out.resonance = refine_root_z(p, seed, f, o);
    return out;
}

GApprox g_approx(const Potential& p, cplx z, double f) {
    check_field(f);
    const cplx k = std::sqrt(z);
    const double a = std::arg(k);
    if (!(a > -pi / 6.0 && a < 0.0)) throw DomainError("g_approx needs arg k in (-pi/6, 0)");
    GApprox g;
    const cplx F = p.is_zero() ? cplx(0.0) : reflection_F(p, k);
    if (F == 0.0) {
        g.value = 1.0;
        return g;
    }
    const cplx t = std::log(F / (2.0 * k)) + (4.0 * I / (3.0 * f)) * k * k * k;
    if (t.real() < 600.0) {
        g.value = 1.0 + std::exp(t);
    } else {
        g.scaled = true;
        g.log_scale = t;
        g.value = std::exp(-t) + 1.0;
    }
    return g;
}

namespace {

double abs_F(const Potential& p, cplx k) {
    try {
        return std::abs(reflection_F(p, k));
    } catch (const NumericalError& e) {
        if (e.kind() == Failure::transmission_pole) return std::numeric_limits<double>::infinity();
        throw;
    }
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

} // namespace

std::vector<RegionDescriptor> resonance_free_regions(const Potential& p, double f, double delta, double C0) {
    check_field(f);
    if (!(delta > 0.0 && delta < 1.0) || !(C0 > 0.0)) throw DomainError("need 0 < delta < 1 and C0 > 0");
    const double C1 = delta;
    std::vector<double> eigen;
    for (const BoundState& b : bound_states(p)) eigen.push_back(b.lambda0);

    const double zr_lo = std::sqrt(delta), zr_hi = 1.0 / std::sqrt(delta);
    const double kr_hi = 1.0 / delta;
    const double log_term = f * std::log(1.0 / f);
    const cplx up = std::polar(1.0, pi / 3.0);

    auto d_of = [eigen](cplx z) {
        double d = z.real() >= 0.0 ? std::abs(z.imag()) : std::abs(z);
        for (double e : eigen) d = std::min(d, std::abs(z - e));
        return d;
    };
    auto in_z_annulus = [=](cplx k) { return std::abs(k) > zr_lo && std::abs(k) < zr_hi; };
    const double tiny = 1e-9;

    std::vector<RegionDescriptor> out;
    out.push_back({"i",
                   "delta < |z| < 1/delta, arg k in [-pi/6, 0), Im k <= -" + fmt(C0 * f) + ", |F(k)| > " + fmt(C1),
                   {tiny, zr_hi, -0.5 * zr_hi, -C0 * f},
                   [=, &p](cplx k) {
                       const double a = std::arg(k);
                       return in_z_annulus(k) && a >= -pi / 6.0 && a < 0.0 && k.imag() <= -C0 * f &&
                              abs_F(p, k) > C1;
                   }});
    out.push_back({"ii",
                   "delta < |z| < 1/delta, arg k in [-pi/6, 0), Im k <= -3 f log(1/f) / 8|k|^2, |F(k)| > " +
                       fmt(C0 * f),
                   {tiny, zr_hi, -0.5 * zr_hi, -tiny},
                   [=, &p](cplx k) {
                       const double a = std::arg(k);
                       return in_z_annulus(k) && a >= -pi / 6.0 && a < 0.0 &&
                              k.imag() <= -3.0 * log_term / (8.0 * std::norm(k)) && abs_F(p, k) > C0 * f;
                   }});
    out.push_back({"iii",
                   "delta < |z| < 1/delta, arg z in [-pi, -5pi/6], dist(z, spec H) > " + fmt(C0 * f),
                   {tiny, zr_hi * std::cos(5.0 * pi / 12.0), -zr_hi, -zr_lo * std::sin(5.0 * pi / 12.0)},
                   [=](cplx k) {
                       const double a = std::arg(k);
                       return in_z_annulus(k) && a >= -pi / 2.0 && a <= -5.0 * pi / 12.0 && d_of(k * k) > C0 * f;
                   }});
    out.push_back({"iv",
                   "|k| < 1/delta, arg k in [-pi/2 + delta, -pi/3], k = e^{-i pi/3}(k0 - i kappa), k0 > delta, kappa > " +
                       fmt(C0 * f),
                   {tiny, kr_hi * 0.5, -kr_hi, -tiny},
                   [=](cplx k) {
                       const double a = std::arg(k);
                       const cplx w = up * k;
                       return std::abs(k) < kr_hi && a >= -pi / 2.0 + delta && a <= -pi / 3.0 && w.real() > delta &&
                              -w.imag() > C0 * f;
                   }});
    out.push_back({"v",
                   "|k| < 1/delta, arg k in [-pi/3, -delta], k = e^{-i pi/3}(k0 + i kappa), k0 > delta, kappa > " +
                       fmt(C0 * f) + ", |F(k)| > " + fmt(delta),
                   {tiny, kr_hi, -kr_hi * std::sin(pi / 3.0), -tiny},
                   [=, &p](cplx k) {
                       const double a = std::arg(k);
                       const cplx w = up * k;
                       return std::abs(k) < kr_hi && a >= -pi / 3.0 && a <= -delta && w.real() > delta &&
                              w.imag() > C0 * f && abs_F(p, k) > delta;
                   }});
    out.push_back({"vi",
                   "|k| < 1/delta, arg k in [-pi/3, -delta], k = e^{-i pi/3}(k0 + i kappa), k0 > delta, "
                   "kappa > f log(1/f) / 8|k|^2, |F(k)| > " +
                       fmt(C0 * f),
                   {tiny, kr_hi, -kr_hi * std::sin(pi / 3.0), -tiny},
                   [=, &p](cplx k) {
                       const double a = std::arg(k);
                       const cplx w = up * k;
                       return std::abs(k) < kr_hi && a >= -pi / 3.0 && a <= -delta && w.real() > delta &&
                              w.imag() > log_term / (8.0 * std::norm(k)) && abs_F(p, k) > C0 * f;
                   }});
    return out;
}

std::vector<Rect> probe_rectangles(const RegionDescriptor& r, int n) {
    const Rect& b = r.bounds;
    for (int cells = 8; cells <= 64; cells *= 2) {
        std::vector<Rect> inside;
        const double w = b.width() / cells, h = b.height() / cells;
        for (int i = 0; i < cells; ++i) {
            for (int jj = 0; jj < cells; ++jj) {
                const Rect c{b.re0 + i * w, b.re0 + (i + 1) * w, b.im0 + jj * h, b.im0 + (jj + 1) * h};
                if (!(c.re0 > 0.0 && c.im1 < 0.0)) continue;
                bool ok = true;
                for (int s = 0; s <= 6 && ok; ++s)
                    for (int t = 0; t <= 6 && ok; ++t)
                        ok = r.contains({c.re0 + c.width() * s / 6.0, c.im0 + c.height() * t / 6.0});
                if (ok) inside.push_back(c);
            }
        }
        if (static_cast<int>(inside.size()) >= n) {
            std::vector<Rect> out;
            for (int q = 0; q < n; ++q) {
                const std::size_t idx = n == 1 ? inside.size() / 2 : q * (inside.size() - 1) / (n - 1);
                out.push_back(inside[idx]);
            }
            return out;
        }
    }
    throw NumericalError(Failure::degenerate, "region " + r.id + " is too thin for probe rectangles");
}

} // namespace stark
