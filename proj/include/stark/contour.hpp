#pragma once

#include "stark/airy.hpp"

#include <functional>
#include <string>

namespace stark {

// Axis-aligned rectangle in the complex plane.
struct Rect {
    double re0 = 0, re1 = 0, im0 = 0, im1 = 0;

    cplx center() const { return {0.5 * (re0 + re1), 0.5 * (im0 + im1)}; }
    double width() const { return re1 - re0; }
    double height() const { return im1 - im0; }
    bool contains(cplx k, double margin = 0.0) const {
        return k.real() >= re0 - margin && k.real() <= re1 + margin && k.imag() >= im0 - margin &&
               k.imag() <= im1 + margin;
    }
    std::string str() const;
};

// A sample used for phase tracking. The tracked phase is arg(value) + extra_phase; the sample
// counts as a zero when |value| <= zero_tol * scale. rate bounds |d phase / dk| near the sample
// for factors that rotate faster than the sampling can see; 0 when there are none.
struct PhaseSample {
    cplx value;
    double extra_phase = 0.0;
    double scale = 1.0;
    double rate = 0.0;
};
using PhaseFn = std::function<PhaseSample(cplx)>;

struct WindingResult {
    int winding = 0;
    bool boundary_zero = false;
    int evaluations = 0;
};

// Winding number of the tracked phase around the positively oriented boundary of r.
// Each edge starts with min_per_edge samples and is bisected until every phase step is below pi/2
// and no step is longer than pi/(2 rate).
WindingResult winding_number(const PhaseFn& fn, const Rect& r, int min_per_edge = 64,
                             double zero_tol = 1e-11);

struct RootResult {
    cplx root;
    cplx value;
    int iterations = 0;
    bool converged = false;
};

// Secant start, Muller iterations. Stops when the step falls below tol and accept(value) holds.
// leave(x) is consulted after every step and aborts the iteration when it returns true.
RootResult muller(const std::function<cplx(cplx)>& fn, cplx x0, cplx x1, double tol, int max_iter,
                  const std::function<bool(cplx, cplx)>& accept,
                  const std::function<bool(cplx)>& leave);

} // namespace stark
