#pragma once

#include "stark/airy.hpp"
#include "stark/potential.hpp"

#include <vector>

namespace stark {

// Cauchy data of a solution of -psi'' + (V(x) + f x) psi = z psi at one point.
struct BoundaryData {
    double position = 0;
    cplx psi;
    cplx dpsi;
};

// Maps (psi, psi') at `from` to (psi, psi') at `to`.
struct TransferMatrix {
    cplx m11, m12, m21, m22;
    double from = 0, to = 0;

    cplx det() const { return m11 * m22 - m12 * m21; }
};

inline constexpr double kPropagationTolerance = 1e-12;

// Integrate the Cauchy problem from seed.position to `to`. Adaptive Dormand-Prince 5(4)
// between breakpoints; exact segment matrices when f == 0 and the potential is piecewise constant.
BoundaryData propagate(const Potential& p, cplx z, double f, const BoundaryData& seed, double to);

TransferMatrix transfer_matrix(const Potential& p, cplx z, double f, double from, double to);

// States at each of the monotone abscissae xs (starting from seed), together with
// int psi^2 dx and int x psi^2 dx over the traversed range (signed by direction).
struct PathResult {
    std::vector<BoundaryData> states;
    cplx int_psi2;
    cplx int_x_psi2;
};
PathResult propagate_path(const Potential& p, cplx z, double f, const BoundaryData& seed,
                          const std::vector<double>& xs);

} // namespace stark
