#include "stark/spectrum.hpp"

#include "stark/error.hpp"
#include "stark/schrodinger.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace stark {

namespace {

constexpr int kSamples = 401;
constexpr double kTailLengths = 4.0;

// Pieces of [-L, L] between consecutive breakpoints.
std::vector<std::pair<double, double>> pieces(const Potential& p) {
    std::vector<double> b = p.breakpoints();
    b.push_back(-p.L);
    b.push_back(p.L);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i] >= -p.L && b[i + 1] <= p.L && b[i + 1] > b[i]) out.emplace_back(b[i], b[i + 1]);
    return out;
}

BoundState build(const Potential& p, double lambda) {
    const double L = p.L;
    const double k = std::sqrt(-lambda);
    BoundState bs;
    bs.lambda0 = lambda;

    std::vector<double> xs(kSamples);
    for (int i = 0; i < kSamples; ++i) xs[i] = -L + 2.0 * L * i / (kSamples - 1);
    xs.back() = L;
    const PathResult path = propagate_path(p, lambda, 0.0, {-L, 1.0, k}, xs);
    const double psiR = path.states.back().psi.real();

    // Unit left value: tails contribute 1/(2k) and psiR^2/(2k).
    const double norm2 = path.int_psi2.real() + (1.0 + psiR * psiR) / (2.0 * k);
    const double n = std::sqrt(norm2);
    bs.kappa_minus = std::exp(k * L) / n;
    bs.kappa_plus = psiR * std::exp(k * L) / n;

    const double left_x = -L / (2.0 * k) - 1.0 / (4.0 * k * k);
    const double right_x = psiR * psiR * (L / (2.0 * k) + 1.0 / (4.0 * k * k));
    bs.lambda1 = (path.int_x_psi2.real() + left_x + right_x) / norm2;

    // Sampled eigenfunction with a few decay lengths of analytic tail on each side.
    const double ext = kTailLengths / k;
    const int tail = 40;
    for (int i = 0; i < tail; ++i) {
        const double x = -L - ext + ext * i / tail;
        bs.x.push_back(x);
        bs.phi.push_back(bs.kappa_minus * std::exp(k * x));
    }
    for (int i = 0; i < kSamples; ++i) {
        bs.x.push_back(xs[i]);
        bs.phi.push_back(path.states[i].psi.real() / n);
    }
    for (int i = 1; i <= tail; ++i) {
        const double x = L + ext * i / tail;
        bs.x.push_back(x);
        bs.phi.push_back(bs.kappa_plus * std::exp(-k * x));
    }

    // Independent normalisation from the right-decaying solution scaled by kappa_plus.
    const double vr = bs.kappa_plus * std::exp(-k * L);
    const PathResult back = propagate_path(p, lambda, 0.0, {L, vr, -k * vr}, {L, -L});
    const double vl = back.states.back().psi.real();
    const double norm_r = -back.int_psi2.real() + (vr * vr + vl * vl) / (2.0 * k);
    bs.norm_check = std::abs(norm_r - 1.0);
    return bs;
}

} // namespace

double bound_state_mismatch(const Potential& p, double lambda) {
    if (!(lambda < 0.0)) throw DomainError("bound_state_mismatch: lambda must be negative");
    const double k = std::sqrt(-lambda);
    const BoundaryData b = propagate(p, lambda, 0.0, {-p.L, 1.0, k}, p.L);
    return (b.dpsi + k * b.psi).real();
}

std::vector<BoundState> bound_states(const Potential& p) {
    std::vector<BoundState> out;
    double vmin = 0.0;
    if (p.kind == PotentialKind::piecewise_constant) {
        for (const Segment& s : p.segments) vmin = std::min(vmin, s.v);
    } else {
        for (double v : p.values) vmin = std::min(vmin, v);
    }
    if (!(vmin < 0.0)) return out;

    const double depth = -vmin;
    std::vector<double> grid;
    // Open interval (-depth, 0): uniform cells, then geometric steps towards 0 for states
    // bound more weakly than half a cell.
    for (int i = 0; i <= kEigenGrid; ++i) grid.push_back(-depth + depth * (i + 0.5) / (kEigenGrid + 1));
    for (int m = 1; m <= 40; ++m) grid.push_back(grid[kEigenGrid] * std::ldexp(1.0, -m));
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) d[i] = bound_state_mismatch(p, grid[i]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double lo = grid[i], hi = grid[i + 1];
        double dlo = d[i];
        if (dlo == 0.0) {
            out.push_back(build(p, lo));
            continue;
        }
        if ((dlo < 0.0) == (d[i + 1] < 0.0) || d[i + 1] == 0.0) continue;
        while (hi - lo > kEigenTolerance * std::max(1.0, std::abs(lo))) {
            const double mid = 0.5 * (lo + hi);
            const double dm = bound_state_mismatch(p, mid);
            if ((dm < 0.0) == (dlo < 0.0)) {
                lo = mid;
                dlo = dm;
            } else {
                hi = mid;
            }
        }
        out.push_back(build(p, 0.5 * (lo + hi)));
    }
    return out;
}

double tail_overlap(const Potential& p, const BoundState& bs) {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const double k = std::sqrt(-bs.lambda0);
    // Phi on [-L, L] restarted from the left tail data.
    const double v0 = bs.kappa_minus * std::exp(-k * p.L);
    double acc = 0.0;
    for (auto [a, b] : pieces(p)) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        if (eval_potential(p, mid) == 0.0 && p.kind == PotentialKind::piecewise_constant) continue;
        // Abscissae in increasing order for a single forward path.
        std::vector<std::pair<double, double>> nodes;
        const auto& xa = Rule::abscissa();
        const auto& wa = Rule::weights();
        for (std::size_t i = 0; i < xa.size(); ++i) {
            nodes.emplace_back(mid - half * xa[i], wa[i]);
            if (xa[i] != 0.0) nodes.emplace_back(mid + half * xa[i], wa[i]);
        }
        std::sort(nodes.begin(), nodes.end());
        std::vector<double> xs{-p.L};
        for (auto& nd : nodes) xs.push_back(nd.first);
        const PathResult path = propagate_path(p, bs.lambda0, 0.0, {-p.L, v0, k * v0}, xs);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double x = nodes[i].first;
            acc += half * nodes[i].second * eval_potential(p, x) * std::exp(-k * x) * path.states[i + 1].psi.real();
        }
    }
    return acc;
}

double predicted_width(const BoundState& bs, double f) {
    if (!(f > 0.0)) throw DomainError("predicted_width: field strength must be positive");
    const double s = -bs.lambda0 - f * bs.lambda1;
    if (!(s > 0.0)) throw DomainError("predicted_width: -lambda0 - f lambda1 must be positive");
    const double k = std::sqrt(-bs.lambda0);
    const double e = std::exp(-(4.0 / (3.0 * f)) * std::pow(s, 1.5));
    const double via_kappa = k * bs.kappa_minus * bs.kappa_minus * e;
    const double overlap = -2.0 * bs.kappa_minus * k;
    const double via_overlap = overlap * overlap / (4.0 * k) * e;
    if (std::abs(via_kappa - via_overlap) > 1e-9 * std::abs(via_kappa))
        throw NumericalError(Failure::guard_violation, "predicted_width: width forms disagree");
    return via_kappa;
}

} // namespace stark
