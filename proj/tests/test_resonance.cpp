#include "stark/error.hpp"
#include "stark/resonance.hpp"
#include "stark/spectrum.hpp"

#include <doctest.h>

#include <numbers>

using namespace stark;
using std::numbers::pi;

TEST_CASE("free Stark operator has no resonances") {
    const Potential z = zero_potential();
    for (double f : {0.5, 0.1})
        CHECK(count_zeros(z, f, {0.3, 2.0, -0.6, -0.001}) == 0);
}

TEST_CASE("free bilinear form is the Airy Wronskian") {
    const Potential z = zero_potential();
    const double f = 0.3;
    const cplx expect = std::cbrt(f) * std::polar(1.0, -pi / 6.0) / (2.0 * pi);
    for (cplx k : {cplx(0.5, -0.1), cplx(1.5, -0.5), cplx(0.2, -1.0)}) {
        const Bilinear b = bilinear_form(z, k * k, f);
        CHECK(std::abs(b.mantissa * std::exp(b.log_factor) - expect) < 1e-10 * std::abs(expect));
    }
}

TEST_CASE("string root on the square barrier") {
    const Potential b = square_barrier(2.0, 1.0);
    const double f = 0.1;
    const Resonance r = refine_root(b, cplx(0.95, -0.001), f);
    CHECK(std::abs(r.k - cplx(0.9504304228, -0.00083624669)) < 1e-9);
    CHECK(r.residual < 1e-12);
    CHECK(std::abs(r.z - r.k * r.k) < 1e-15);

    SUBCASE("both matching directions vanish") {
        for (MatchDirection d : {MatchDirection::seed_left, MatchDirection::seed_right}) {
            const Residual res = matching_residual(b, r.k, f, d);
            CHECK(std::abs(res.value) < 1e-9 * res.scale);
        }
    }
    SUBCASE("bilinear form vanishes") {
        const Bilinear w = bilinear_form(b, r.z, f);
        CHECK(std::abs(w.mantissa) < 1e-9 * w.scale);
    }
    SUBCASE("z iteration agrees") {
        const Resonance rz = refine_root_z(b, r.z * cplx(1.0, 1e-4), f);
        CHECK(std::abs(rz.k - r.k) < 1e-10);
    }
}

TEST_CASE("scan agrees with the count") {
    const Potential b = square_barrier(2.0, 1.0);
    const Rect rect{0.9, 1.3, -0.3, -1e-5};
    const double f = 0.05;
    const int n = count_zeros(b, f, rect);
    ScanOptions o;
    o.threads = 2;
    const std::vector<Resonance> roots = scan_rectangle(b, f, rect, o);
    CHECK(static_cast<int>(roots.size()) == n);
    CHECK(n >= 3);
    for (const Resonance& r : roots) {
        CHECK(rect.contains(r.k));
        CHECK(r.residual < 1e-9);
        CHECK(r.method == ResonanceMethod::scan);
    }
    // Deterministic regardless of worker count.
    o.threads = 1;
    const std::vector<Resonance> again = scan_rectangle(b, f, rect, o);
    REQUIRE(again.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(again[i].k == roots[i].k);
}

TEST_CASE("property: counts are additive") {
    const Potential w = square_well(-2.0, 1.0);
    const double f = 0.1;
    const int whole = count_zeros(w, f, {1.0, 2.0, -0.4, -1e-4});
    const int left = count_zeros(w, f, {1.0, 1.5031, -0.4, -1e-4});
    const int right = count_zeros(w, f, {1.5031, 2.0, -0.4, -1e-4});
    CHECK(whole == left + right);
    CHECK(whole > 0);
}

TEST_CASE("bound-state resonance of the well in the z variable") {
    const Potential w = square_well(-2.0, 1.0);
    const BoundState bs = bound_states(w).at(0);
    RefineOptions o;
    o.dir = MatchDirection::seed_right;
    const Resonance r = refine_root_z(w, cplx(bs.lambda0, -1e-3), 0.3, o);
    // Quadratic Stark effect: the ground state moves down by O(f^2).
    CHECK(r.z.real() < bs.lambda0);
    CHECK(bs.lambda0 - r.z.real() < 0.3 * 0.3);
    CHECK(r.z.imag() < 0.0);
    CHECK(r.residual < 1e-10);
}

TEST_CASE("preconditions") {
    const Potential w = square_well(-2.0, 1.0);
    CHECK_THROWS_AS(count_zeros(w, 0.0, {1.0, 2.0, -1.0, -0.1}), DomainError);
    CHECK_THROWS_AS(count_zeros(w, 0.1, {1.0, 2.0, -1.0, 0.1}), DomainError);
    CHECK_THROWS_AS(count_zeros(w, 0.1, {2.0, 1.0, -1.0, -0.1}), DomainError);
    CHECK(default_direction(cplx(1.0, -0.1)) == MatchDirection::seed_left);
    CHECK(default_direction(cplx(0.1, -1.0)) == MatchDirection::seed_right);
}
