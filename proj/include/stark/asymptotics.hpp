#pragma once

#include "stark/contour.hpp"
#include "stark/potential.hpp"
#include "stark/resonance.hpp"
#include "stark/scattering.hpp"
#include "stark/spectrum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stark {

enum class StringFamily { positive_axis, line_2pi3, reflection_zero, bound_state };
const char* string_family_name(StringFamily f);

// Leading-order prediction for one member of a resonance family. For the two string families
// k_pred = eta - (f/4)(theta + i l)/eta^2 (rotated by e^{-i pi/3} on the line), where
// log(i G(eta)) = -l + i theta and eta = eta0(j) = (3 pi f j / 2)^{1/3}.
struct StringPrediction {
    StringFamily family = StringFamily::positive_axis;
    int j = 0;
    cplx k_pred;
    double eta0 = 0;
    double theta = 0;
    double l = 0;
    double order_estimate = 0;
};

double string_eta0(double f, int j);

// Members with eta0(j) in [kmin, kmax] near the positive real axis, G = -rho.
// Throws NumericalError(f_too_small) if |rho| nearly vanishes somewhere on the window.
std::vector<StringPrediction> string_positive_axis(const Potential& p, double f, double kmin, double kmax);

// G for the line arg k = -pi/3 at f = 0: with psi = e^{-ikx} right of the support,
// G = e^{-2ikL} (psi' - ik psi) / (psi' + ik psi) evaluated at -L.
cplx line_G(const Potential& p, cplx k);

// Members with eta0(j) in [eta_min, eta_max]; k_pred = e^{-i pi/3} eta(j).
// Throws NumericalError(g_pole) when |G| > 1e6, NumericalError(degenerate) for V = 0 or when G vanishes.
std::vector<StringPrediction> string_line(const Potential& p, double f, double eta_min, double eta_max);

// Phi(k, f) with: matching residual = 0  <=>  e^{4 i eta^{3/2} / 3f} = Phi, eta = k^2 - f L.
// Built from the oscillatory split of A2 at +L; no exponential is evaluated.
cplx exact_exponential_ratio(const Potential& p, cplx k, double f);

struct FixedPointOptions {
    std::optional<FZero> nearby_zero; // registered reflection zero for the guard
    double epsilon = 0.5;
    int max_iter = 40;
    double tol = 1e-12;
    std::vector<double>* steps = nullptr; // |k_{n+1} - k_n| per iteration, if requested
};

// Iterates k^3 = 3 pi f j / 2 - (3 i f / 4) log Phi_k(k) where Phi_k = Phi e^{-(4i/3f)(eta^{3/2} - k^3)}.
// The fixed point is an exact resonance; order_estimate is 0.
StringPrediction string_fixed_point(const Potential& p, double f, int j, cplx k_start,
                                    const FixedPointOptions& opt = {});

// Resonance emanating from a simple zero of F, with its distance to the zero at f, f/2, f/4.
struct TrackedZero {
    Resonance resonance;
    double distance[3] = {0, 0, 0};
    bool monotone = false;
};
TrackedZero track_reflection_zero_resonance(const Potential& p, double f, const FZero& zero);

// Exponent (4/3f)(-lambda0)^{3/2} above which the width is below double precision.
inline constexpr double kWidthExponentLimit = 30.0;

struct BoundStateResonance {
    Resonance resonance;
    double predicted_width = 0;
};
BoundStateResonance bound_state_resonance(const Potential& p, double f, const BoundState& bs);

// 1 + e^{4ik^3/3f} F(k) / 2k. When the exponential overflows, value is returned scaled:
// true value = value * exp(log_scale).
struct GApprox {
    cplx value;
    cplx log_scale = 0.0;
    bool scaled = false;
};
GApprox g_approx(const Potential& p, cplx z, double f);

// Resonance-free set in the k-plane, instantiated for a potential and field.
struct RegionDescriptor {
    std::string id;         // "i" ... "vi"
    std::string definition; // inequalities with the constants filled in
    Rect bounds;            // bounding box in k
    std::function<bool(cplx)> contains;
};
std::vector<RegionDescriptor> resonance_free_regions(const Potential& p, double f, double delta, double C0);

// n rectangles lying inside the region, spread across it. Cells of a grid over the bounding box
// are accepted when every sample on a fine lattice covering them is inside.
std::vector<Rect> probe_rectangles(const RegionDescriptor& r, int n = 3);

} // namespace stark
