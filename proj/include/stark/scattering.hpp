#pragma once

#include "stark/contour.hpp"
#include "stark/potential.hpp"

#include <vector>

namespace stark {

// Field-free scattering data. The solution equal to e^{-ikx} left of the support is
// c1 e^{ikx} + c2 e^{-ikx} right of it, so t = 1/c2 and rho = c1/c2 = r(-k).
// r_left = r(k) is the reflection amplitude for a wave incident from the left.
struct Amplitudes {
    cplx k;
    cplx t;
    cplx rho;
    cplx r_left;
    cplx c1, c2;
    cplx t_right_seed; // 1/a from the solution seeded as e^{ikx} on the right
};

Amplitudes amplitudes(const Potential& p, cplx k);

// F(k) = 2 i k rho(k).
cplx reflection_F(const Potential& p, cplx k);

// Cauchy-integral derivative of F on a circle of the given radius.
cplx F_derivative(const Potential& p, cplx k, double radius = 1e-3, int points = 16);

// Entire numerator of F: (psi' + i k psi)(L) for psi seeded as e^{-ikx} at -L.
cplx F_numerator(const Potential& p, cplx k);

// Deviations from the real-k unitarity relations.
struct UnitarityCheck {
    double probability;   // | |r|^2 + |t|^2 - 1 |, worst of both incidence sides
    double cross;         // | conj(r(-k)) t(k) + r(k) conj(t(-k)) |
    double reciprocity;   // | t_left - t_right |
};
UnitarityCheck unitarity(const Amplitudes& a);

struct FZero {
    cplx k;
    int order = 1;
};

// Zeros of F in a window inside -pi/3 < arg k < 0, |k| > 0.1.
std::vector<FZero> find_F_zeros(const Potential& p, const Rect& window);

} // namespace stark
