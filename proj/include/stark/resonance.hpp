#pragma once

#include "stark/contour.hpp"
#include "stark/potential.hpp"

#include <optional>
#include <vector>

namespace stark {

// seed_left starts from the Airy solution decaying on the left, seed_right from the one on the right.
enum class MatchDirection { seed_left, seed_right };

// seed_left for arg k in (-pi/6, 0], seed_right below.
MatchDirection default_direction(cplx k);

// Exterior Airy data at the support edges for energy z and field f:
//   A1(x) = Ai(e^{2 pi i/3} f^{1/3} (x - z/f)) at x = -L,  A2(x) = Ai(f^{1/3} (x - z/f)) at x = +L.
// m* are value mantissas, d* x-derivative mantissas, sp* the principal scale exponents and sa*
// exponents analytic across the part of the z-plane where resonances are sought.
struct AiryEnds {
    cplx m1, d1, sp1, sa1;
    cplx m2, d2, sp2, sa2;
};
AiryEnds airy_ends(double L, cplx z, double f);

struct Residual {
    cplx value;   // analytic in z near the evaluation point
    double scale; // magnitude of the cancelling terms
};

// Wronskian-type matching residual. Falls back to the bilinear form when the seed Airy value
// is within pole-proximity of a zero.
Residual matching_residual(const Potential& p, cplx k, double f, MatchDirection dir);
Residual matching_residual_z(const Potential& p, cplx z, double f, MatchDirection dir);

// Bilinear form W = psi'(L) A2(L) - psi(L) A2'(L) with psi carrying the A1 Cauchy data from -L.
// W = mantissa * exp(log_factor) on principal branches. W is entire in z, vanishes exactly at
// resonances and has no poles, so it is the form used for counting.
struct Bilinear {
    cplx mantissa;
    cplx log_factor;
    double scale; // size of the cancelling terms, same normalisation as mantissa
};
Bilinear bilinear_form(const Potential& p, cplx z, double f);

enum class ResonanceMethod { newton, scan, string_refined };
const char* resonance_method_name(ResonanceMethod m);

struct Resonance {
    cplx k;
    cplx z;
    double residual = 0; // |R| / scale at the root
    ResonanceMethod method = ResonanceMethod::newton;
    std::optional<int> j;
    double f = 0;
};

struct RefineOptions {
    double tol = 0.0; // 0 selects 1e-10 |k|
    int max_iter = 50;
    std::optional<MatchDirection> dir;
};

Resonance refine_root(const Potential& p, cplx k_guess, double f, const RefineOptions& opt = {});
// Same iteration with z as the variable, for roots hugging the negative z axis.
Resonance refine_root_z(const Potential& p, cplx z_guess, double f, const RefineOptions& opt = {});

// Number of resonances inside a rectangle of the fourth k-quadrant.
int count_zeros(const Potential& p, double f, const Rect& rect);

struct ScanOptions {
    int max_depth = 8;
    int threads = 1;
};
std::vector<Resonance> scan_rectangle(const Potential& p, double f, const Rect& rect,
                                      const ScanOptions& opt = {});

} // namespace stark
