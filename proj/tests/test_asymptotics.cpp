#include "stark/asymptotics.hpp"
#include "stark/error.hpp"

#include <doctest.h>

#include <numbers>

using namespace stark;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

Failure failure_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const NumericalError& e) {
        return e.kind();
    }
    FAIL("expected a numerical error");
    return Failure::degenerate;
}

} // namespace

TEST_CASE("string spacing") {
    CHECK(string_eta0(0.05, 7) == doctest::Approx(std::cbrt(1.5 * pi * 0.35)).epsilon(1e-15));
    CHECK(string_eta0(0.05, 7) == doctest::Approx(1.18151).epsilon(1e-5));
}

TEST_CASE("positive-axis predictions") {
    const Potential b = square_barrier(2.0, 1.0);
    const double f = 0.02;
    const std::vector<StringPrediction> s = string_positive_axis(b, f, 0.9, 2.0);
    REQUIRE(s.size() > 10);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CAPTURE(s[i].j);
        CHECK(s[i].family == StringFamily::positive_axis);
        CHECK(s[i].l > 0.0);
        CHECK(s[i].k_pred.imag() < 0.0);
        if (i > 0) {
            CHECK(s[i].j == s[i - 1].j + 1);
            CHECK(std::abs(s[i].theta - s[i - 1].theta) < pi / 2.0);
        }
    }
}

TEST_CASE("property: prediction density") {
    const Potential b = square_barrier(2.0, 1.0);
    for (double f : {0.05, 0.02, 0.01}) {
        const double k0 = 1.5, dk = 0.2;
        int n = 0;
        for (const StringPrediction& s : string_positive_axis(b, f, k0 - 0.1, k0 + 0.1)) {
            (void)s;
            ++n;
        }
        const double expect = 2.0 * k0 * k0 * dk / (pi * f);
        CAPTURE(f);
        CHECK(std::abs(n - expect) <= std::max(1.0, 0.1 * expect));
    }
}

TEST_CASE("prediction accuracy improves quadratically") {
    const Potential b = square_barrier(2.0, 1.0);
    double prev = 0;
    for (double f : {0.1, 0.05}) {
        double err = 0;
        for (const StringPrediction& s : string_positive_axis(b, f, 1.2, 1.4))
            err = std::max(err, std::abs(refine_root(b, s.k_pred, f).k - s.k_pred));
        if (prev > 0) CHECK(prev / err >= 3.0);
        prev = err;
    }
}

TEST_CASE("exact ratio at a resonance") {
    const Potential b = square_barrier(2.0, 1.0);
    const double f = 0.1;
    const Resonance r = refine_root(b, cplx(0.95, -0.001), f);
    const cplx eta = r.k * r.k - f * b.L;
    const cplx lhs = std::exp(4.0 * I * eta * std::sqrt(eta) / (3.0 * f));
    const cplx phi = exact_exponential_ratio(b, r.k, f);
    CHECK(std::abs(lhs - phi) < 1e-9 * std::abs(phi));
}

TEST_CASE("fixed point") {
    const Potential w = square_well(-2.0, 1.0);
    SUBCASE("agrees with Newton") {
        const double f = 0.1;
        const std::vector<StringPrediction> s = string_positive_axis(w, f, 0.95, 1.05);
        REQUIRE(!s.empty());
        const StringPrediction fp = string_fixed_point(w, f, s[0].j, s[0].k_pred);
        const Resonance r = refine_root(w, s[0].k_pred, f);
        CHECK(std::abs(fp.k_pred - r.k) < 1e-10);
    }
    SUBCASE("contraction rate") {
        const double f = 0.05;
        const std::vector<StringPrediction> s = string_positive_axis(w, f, 0.95, 1.05);
        REQUIRE(!s.empty());
        std::vector<double> steps;
        FixedPointOptions o;
        o.steps = &steps;
        string_fixed_point(w, f, s[0].j, s[0].k_pred, o);
        REQUIRE(steps.size() >= 3);
        for (std::size_t i = 1; i + 1 < steps.size() && steps[i] > 1e-13; ++i) CHECK(steps[i] <= 0.5 * steps[i - 1]);
    }
}

TEST_CASE("fixed-point guard near a reflection zero") {
    const Potential d = double_bump(1.0, 0.5, 1.0, 2.0);
    const FZero z0{cplx(1.2433741727, -0.1969028996), 1};
    FixedPointOptions o;
    o.nearby_zero = z0;
    const double f = 0.05;
    CHECK(failure_of([&] { string_fixed_point(d, f, 10, z0.k + 0.05, o); }) == Failure::guard_violation);
}

TEST_CASE("line predictions") {
    const Potential b = square_barrier(2.0, 1.0);
    const double f = 0.05;
    const std::vector<StringPrediction> s = string_line(b, f, 0.9, 1.3);
    REQUIRE(!s.empty());
    for (const StringPrediction& p : s) {
        CHECK(p.family == StringFamily::line_2pi3);
        CHECK(std::arg(p.k_pred) == doctest::Approx(-pi / 3.0).epsilon(0.05));
        const Resonance r = refine_root(b, p.k_pred, f);
        CHECK(std::abs(r.k - p.k_pred) < f * f);
    }
    CHECK(failure_of([&] { string_line(zero_potential(), f, 0.9, 1.1); }) == Failure::degenerate);
    CHECK(failure_of([&] { string_positive_axis(zero_potential(), f, 0.9, 1.1); }) == Failure::f_too_small);
}

TEST_CASE("reflection-zero tracking") {
    const Potential d = double_bump(1.0, 0.5, 1.0, 2.0);
    const FZero z0{cplx(1.2433741727, -0.1969028996), 1};
    const TrackedZero t = track_reflection_zero_resonance(d, 0.05, z0);
    CHECK(t.distance[0] < 0.1);
    CHECK(t.distance[1] < 0.05);
    CHECK(t.monotone);
    CHECK_THROWS_AS(track_reflection_zero_resonance(d, 0.05, FZero{z0.k, 2}), DomainError);
}

TEST_CASE("bound-state resonance") {
    const Potential w = square_well(-2.0, 1.0);
    const BoundState bs = bound_states(w).at(0);
    const BoundStateResonance r = bound_state_resonance(w, 0.2, bs);
    CHECK(-r.resonance.z.imag() / r.predicted_width == doctest::Approx(1.0).epsilon(0.3));
    CHECK(failure_of([&] { bound_state_resonance(w, 0.01, bs); }) == Failure::width_underflow);
}

TEST_CASE("g_approx") {
    CHECK(g_approx(zero_potential(), cplx(1.0, -0.1), 0.1).value == cplx(1.0));
    CHECK_THROWS_AS(g_approx(square_well(-2.0, 1.0), cplx(-1.0, -0.1), 0.1), DomainError);
    // Far below the real axis the exponential overflows and the pair comes back scaled.
    const cplx k = std::polar(3.0, -0.4);
    const GApprox g = g_approx(square_barrier(2.0, 1.0), k * k, 0.01);
    CHECK(g.scaled);
    CHECK(std::isfinite(std::abs(g.value)));
}

TEST_CASE("resonance-free regions") {
    const Potential w = square_well(-2.0, 1.0);
    const double f = 0.05;
    const std::vector<RegionDescriptor> r = resonance_free_regions(w, f, 0.2, 10.0);
    REQUIRE(r.size() == 6);
    const char* ids[] = {"i", "ii", "iii", "iv", "v", "vi"};
    for (int i = 0; i < 6; ++i) CHECK(r[i].id == ids[i]);

    SUBCASE("region iii excludes a disc around the eigenvalue") {
        const double l0 = bound_states(w).at(0).lambda0;
        CHECK_FALSE(r[2].contains(std::sqrt(cplx(l0, -0.1))));
        CHECK(r[2].contains(std::sqrt(cplx(l0 - 1.0, -0.2))));
    }
    SUBCASE("region iv sits between the line and the negative imaginary axis") {
        CHECK(r[3].contains(std::polar(3.0, -1.3)));
        CHECK_FALSE(r[3].contains(std::polar(1.5, -0.9)));
    }
    SUBCASE("probe rectangles lie inside their region") {
        for (const RegionDescriptor& d : r) {
            for (const Rect& q : probe_rectangles(d, 3)) {
                for (int i = 0; i <= 6; ++i)
                    for (int j = 0; j <= 6; ++j)
                        CHECK(d.contains({q.re0 + q.width() * i / 6.0, q.im0 + q.height() * j / 6.0}));
            }
        }
    }
    CHECK_THROWS_AS(resonance_free_regions(w, f, 0.0, 10.0), DomainError);
}
