#pragma once

#include "stark/potential.hpp"

#include <vector>

namespace stark {

// Negative eigenvalue of H = p^2 + V with its normalised real eigenfunction.
// Outside [-L, L] the eigenfunction is kappa_minus e^{kx} (left) and kappa_plus e^{-kx} (right),
// k = sqrt(-lambda0); x/phi sample it on [-L_ext, L_ext] including a few decay lengths of tail.
struct BoundState {
    double lambda0 = 0;
    std::vector<double> x;
    std::vector<double> phi;
    double kappa_minus = 0;
    double kappa_plus = 0;
    double lambda1 = 0;    // (phi, x phi)
    double norm_check = 0; // |norm - 1| recomputed from the right-seeded solution
};

// Bracketing grid size and bisection target for bound_states.
inline constexpr int kEigenGrid = 400;
inline constexpr double kEigenTolerance = 1e-12;

// All negative eigenvalues, ascending.
std::vector<BoundState> bound_states(const Potential& p);

// Matching function for the bound-state problem: psi'(L) + k psi(L) with psi seeded as
// (1, k) at -L, k = sqrt(-lambda). Zero exactly at eigenvalues.
double bound_state_mismatch(const Potential& p, double lambda);

// (V e^{-kx}, phi) by Gauss-Legendre quadrature over the pieces of V.
double tail_overlap(const Potential& p, const BoundState& bs);

// -Im lambda(f) predicted from the bound state: sqrt(-l0) kappa_minus^2 e^{-(4/3f)(-l0 - f l1)^{3/2}}.
// Throws DomainError when -l0 - f l1 <= 0 or f <= 0.
double predicted_width(const BoundState& bs, double f);

} // namespace stark
