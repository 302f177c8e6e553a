#pragma once

// Independent reference values for the unit tests. None of these call into the library.

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
using HP = boost::multiprecision::cpp_bin_float_50;
using HC = boost::multiprecision::cpp_complex_50;

inline double ai0() { return 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0)); }
inline double aip0() { return -1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0)); }

struct Airy {
    cplx value, derivative;
};

// Maclaurin series in 50 digits; fine for |w| <= 8 where the terms stay below e^{16}.
inline Airy maclaurin(cplx w_in) {
    const HC w(HP(w_in.real()), HP(w_in.imag()));
    const HC w3 = w * w * w;
    HC f(1), g = w, df(0), dg(1);
    HC tf(1), tg = w, tdf(0), tdg(1);
    for (int k = 0; k < 400; ++k) {
        tf *= w3 / HP((3 * k + 2) * (3 * k + 3));
        tg *= w3 / HP((3 * k + 3) * (3 * k + 4));
        tdf = k == 0 ? HC(w * w / HP(2)) : HC(tdf * w3 / HP(3 * k * (3 * k + 2)));
        tdg *= w3 / HP((3 * k + 1) * (3 * k + 3));
        f += tf;
        g += tg;
        df += tdf;
        dg += tdg;
        if (k > 4 && abs(tf) + abs(tg) + abs(tdf) + abs(tdg) < HP("1e-45")) break;
    }
    const HP c1 = 1 / (pow(HP(3), HP(2) / 3) * boost::math::tgamma(HP(2) / 3));
    const HP c2 = 1 / (pow(HP(3), HP(1) / 3) * boost::math::tgamma(HP(1) / 3));
    const HC v = HC(c1) * f - HC(c2) * g, d = HC(c1) * df - HC(c2) * dg;
    return {{static_cast<double>(v.real()), static_cast<double>(v.imag())},
            {static_cast<double>(d.real()), static_cast<double>(d.imag())}};
}

// Real-axis values from Boost's independent implementation.
inline Airy real_axis(double x) { return {boost::math::airy_ai(x), boost::math::airy_ai_prime(x)}; }

// Even ground state of the well V0 < 0 on [-a, a]: q tan(q a) = sqrt(-V0 - q^2), lambda = q^2 + V0.
inline double square_well_ground_state(double V0, double a) {
    const double depth = -V0;
    auto g = [&](double q) { return q * std::tan(q * a) - std::sqrt(depth - q * q); };
    const double hi = std::min(std::sqrt(depth), 0.5 * std::numbers::pi / a) * (1.0 - 1e-15);
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(g, 1e-12, hi, tol, it);
    const double q = 0.5 * (r.first + r.second);
    return q * q + V0;
}

// Transmission amplitude of the barrier V0 on [-a, a] at real k (textbook result, any V0).
inline cplx barrier_t(double V0, double a, double k) {
    const cplx q = std::sqrt(cplx(k * k - V0, 0.0));
    const cplx I(0, 1);
    const cplx den = std::cos(2.0 * q * a) - I * (q * q + k * k) / (2.0 * q * k) * std::sin(2.0 * q * a);
    return std::exp(-2.0 * I * k * a) / den;
}

// |r| for the same barrier.
inline double barrier_abs_r(double V0, double a, double k) {
    const cplx q = std::sqrt(cplx(k * k - V0, 0.0));
    return std::abs((q * q - k * k) / (2.0 * q * k) * std::sin(2.0 * q * a)) * std::abs(barrier_t(V0, a, k));
}

} // namespace oracle
