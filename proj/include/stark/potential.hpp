#pragma once

#include <optional>
#include <string>
#include <vector>

namespace stark {

enum class PotentialKind { piecewise_constant, sampled };

struct Segment {
    double xlo = 0, xhi = 0, v = 0;
};

// Real bounded potential supported in [-L, L]. Piecewise-constant segments are disjoint and
// sorted; sampled values are linearly interpolated on a uniform grid and vanish off the grid.
struct Potential {
    PotentialKind kind = PotentialKind::piecewise_constant;
    double L = 1.0;
    std::vector<Segment> segments;
    double x0 = 0, dx = 0;
    std::vector<double> values;
    std::string name;

    bool is_zero() const;
    double max_abs() const;
    // Points where the potential or its slope may jump, sorted, inside [-L, L].
    std::vector<double> breakpoints() const;
};

// Value at x; zero outside [-L, L].
double eval_potential(const Potential& p, double x);

// On an interval between consecutive breakpoints the potential is v0 + v1 (x - x_ref).
struct LinearPiece {
    double x_ref, v0, v1;
};
LinearPiece local_piece(const Potential& p, double xmid);

Potential parse_potential(const std::string& json_text);
Potential load_potential(const std::string& path);
std::string potential_to_json(const Potential& p);

Potential zero_potential();
Potential square_well(double V0, double a);
Potential square_barrier(double V0, double a);
// Two bumps of width a separated by gap, centred on the origin. The left bump has height V0,
// the right one V1 (default V0). Unequal heights move the reflection zeros off the real axis.
Potential double_bump(double V0, double a, double gap, std::optional<double> V1 = std::nullopt);
Potential piecewise(std::vector<Segment> segs, double L = 0.0);
Potential sampled(double x0, double dx, std::vector<double> values, double L = 0.0);

} // namespace stark
