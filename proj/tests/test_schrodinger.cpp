#include "oracles.hpp"

#include "stark/schrodinger.hpp"

#include <doctest.h>

using namespace stark;

namespace {

const cplx I(0.0, 1.0);

} // namespace

TEST_CASE("free plane wave") {
    const Potential p = zero_potential();
    const cplx k(1.3, -0.2);
    const BoundaryData b = propagate(p, k * k, 0.0, {-1.0, std::exp(-I * k), I * k * std::exp(-I * k)}, 1.0);
    CHECK(std::abs(b.psi - std::exp(I * k)) < 1e-12);
    CHECK(std::abs(b.dpsi - I * k * std::exp(I * k)) < 1e-12);
}

TEST_CASE("Stark propagation reproduces the Airy solution") {
    // Zero potential with a field: A2(x) = Ai(c (x - z/f)) solves the equation exactly.
    const Potential p = zero_potential();
    const double f = 0.2, c = std::cbrt(f);
    const cplx z(1.0, -0.1);
    auto a2 = [&](double x) {
        const oracle::Airy o = oracle::maclaurin(c * (x - z / f));
        return BoundaryData{x, o.value, c * o.derivative};
    };
    const BoundaryData b = propagate(p, z, f, a2(-1.0), 1.0);
    const BoundaryData e = a2(1.0);
    CHECK(std::abs(b.psi - e.psi) < 1e-10 * std::abs(e.psi));
    CHECK(std::abs(b.dpsi - e.dpsi) < 1e-10 * std::abs(e.dpsi));
}

TEST_CASE("square well interior against the exact segment solution") {
    const Potential p = square_well(-2.0, 1.0);
    const cplx z(0.5, -0.3);
    const cplx q = std::sqrt(z + 2.0);
    // psi = cos(q (x+1)) inside with psi(-1) = 1, psi'(-1) = 0.
    for (double f : {0.0, 1e-9}) {
        const BoundaryData b = propagate(p, z, f, {-1.0, 1.0, 0.0}, 0.5);
        CHECK(std::abs(b.psi - std::cos(q * 1.5)) < 1e-8);
        CHECK(std::abs(b.dpsi + q * std::sin(q * 1.5)) < 1e-8);
    }
}

TEST_CASE("property: transfer matrices have unit determinant") {
    for (const Potential& p : {square_well(-2.0, 1.0), double_bump(1.0, 0.5, 1.0, 2.0),
                               sampled(-1.0, 0.25, {0, 0.5, 1, 0.5, 0, -0.5, -1, -0.5, 0})}) {
        for (double f : {0.0, 0.05, 0.3}) {
            for (cplx z : {cplx(0.7, 0.0), cplx(2.0, -0.5), cplx(-1.0, -0.01)}) {
                const TransferMatrix m = transfer_matrix(p, z, f, -p.L, p.L);
                CAPTURE(f);
                CAPTURE(z);
                CHECK(std::abs(m.det() - 1.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("property: there and back") {
    const Potential p = double_bump(1.0, 0.5, 1.0, 2.0);
    const BoundaryData seed{-1.0, cplx(0.3, 0.1), cplx(-1.2, 0.4)};
    const BoundaryData mid = propagate(p, cplx(1.5, -0.2), 0.1, seed, 1.0);
    const BoundaryData back = propagate(p, cplx(1.5, -0.2), 0.1, mid, -1.0);
    CHECK(std::abs(back.psi - seed.psi) < 1e-10);
    CHECK(std::abs(back.dpsi - seed.dpsi) < 1e-10);
}

TEST_CASE("path integrals of a plane wave") {
    const Potential p = zero_potential();
    const double k = 0.8;
    const std::vector<double> xs{-1.0, -0.5, 0.0, 0.5, 1.0};
    const PathResult r = propagate_path(p, k * k, 0.0, {-1.0, std::exp(-I * k), I * k * std::exp(-I * k)}, xs);
    REQUIRE(r.states.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(r.states[i].psi - std::exp(I * k * xs[i])) < 1e-12);
    // int e^{2ikx} over [-1, 1] = sin(2k)/k; the x-weighted integral is imaginary.
    CHECK(std::abs(r.int_psi2 - std::sin(2 * k) / k) < 1e-10);
    const double ix = (std::sin(2 * k) / (2 * k * k) - std::cos(2 * k) / k);
    CHECK(std::abs(r.int_x_psi2 - I * ix) < 1e-10);
}
