#include "oracles.hpp"

#include "stark/airy.hpp"
#include "stark/error.hpp"

#include <doctest.h>

#include <random>

using namespace stark;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("Ai and Ai' at the origin") {
    const AiryEval a = ai(0.0);
    CHECK(std::abs(a.value() - oracle::ai0()) < 1e-15);
    CHECK(std::abs(a.derivative() - oracle::aip0()) < 1e-15);
    CHECK(ai_logderiv(0.0).real() == doctest::Approx(-0.7290111).epsilon(1e-7));
}

TEST_CASE("real axis against Boost") {
    for (double x = -15.0; x <= 15.0; x += 0.37) {
        const AiryEval a = ai(x);
        const oracle::Airy o = oracle::real_axis(x);
        // Relative in the scaled mantissa: unscale the reference instead of scaling ours.
        const double s = std::exp(-a.scale_exponent.real());
        const double env = x < 0 ? std::pow(std::abs(x), -0.25) / std::sqrt(pi) : std::abs(o.value * s);
        CAPTURE(x);
        CHECK(std::abs(a.value() - o.value) * s <= 1e-10 * (env + std::abs(o.value * s)));
        const double denv = x < 0 ? std::pow(std::abs(x), 0.25) / std::sqrt(pi) : std::abs(o.derivative * s);
        CHECK(std::abs(a.derivative() - o.derivative) * s <= 1e-10 * (denv + std::abs(o.derivative * s)));
    }
}

TEST_CASE("complex disc against the Maclaurin oracle") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> r(0.0, 7.5), t(-pi, pi);
    for (int i = 0; i < 150; ++i) {
        const cplx w = std::polar(r(gen), t(gen));
        const AiryEval a = ai(w);
        const oracle::Airy o = oracle::maclaurin(w);
        const cplx scale = std::exp(-a.scale_exponent);
        CAPTURE(w);
        CHECK(rel(a.value_mantissa, o.value * scale) < 1e-11);
        CHECK(rel(a.derivative_mantissa, o.derivative * scale) < 1e-11);
    }
}

TEST_CASE("series and asymptotic branches overlap") {
    for (double r = 8.5; r <= 10.0; r += 0.5) {
        for (double th = -2.0 * pi / 3.0; th <= 2.0 * pi / 3.0 + 1e-12; th += pi / 12.0) {
            const cplx w = std::polar(r, th);
            const AiryEval s = ai_series(w), a = ai_asymptotic(w);
            CAPTURE(w);
            CHECK(std::abs(s.scale_exponent - a.scale_exponent) < 1e-12 * std::abs(a.scale_exponent));
            CHECK(rel(s.value_mantissa, a.value_mantissa) < 1e-11);
            CHECK(rel(s.derivative_mantissa, a.derivative_mantissa) < 1e-11);
        }
    }
}

TEST_CASE("logarithmic derivative") {
    SUBCASE("recessive side") {
        const cplx d = ai_logderiv(25.0);
        CHECK(d.real() == doctest::Approx(-5.0).epsilon(0.01));
    }
    SUBCASE("pole proximity at the first real zero") {
        try {
            ai_logderiv(-2.338107410459767);
            FAIL("expected pole proximity");
        } catch (const NumericalError& e) {
            CHECK(e.kind() == Failure::pole_proximity);
        }
    }
}

TEST_CASE("oscillatory decomposition") {
    auto recombine = [](cplx w) {
        const OscillatoryParts o = decompose_oscillatory(w);
        return o.coeff_plus * std::exp(o.phase) + o.coeff_minus * std::exp(-o.phase);
    };
    SUBCASE("w = -9") {
        const cplx w = -9.0;
        CHECK(rel(recombine(w), ai(w).value()) < 1e-10);
        const OscillatoryParts o = decompose_oscillatory(w);
        const double lead = 1.0 / (2.0 * std::sqrt(pi) * std::pow(9.0, 0.25));
        CHECK(std::abs(o.coeff_plus) == doctest::Approx(lead).epsilon(0.01));
        CHECK(std::abs(o.coeff_minus) == doctest::Approx(lead).epsilon(0.01));
    }
    SUBCASE("off the axis") {
        const cplx w = std::polar(12.0, pi - 0.1);
        const OscillatoryParts o = decompose_oscillatory(w);
        CHECK(std::isfinite(std::abs(o.coeff_plus)));
        CHECK(std::isfinite(std::abs(o.coeff_minus)));
        CHECK(rel(recombine(w), ai(w).value()) < 1e-10);
        const cplx d = o.dcoeff_plus * std::exp(o.phase) + o.dcoeff_minus * std::exp(-o.phase);
        CHECK(rel(d, ai(w).derivative()) < 1e-10);
    }
    SUBCASE("recessive side is rejected") {
        CHECK_THROWS_AS(decompose_oscillatory(3.0), NumericalError);
    }
}

TEST_CASE("property: rotation Wronskian is constant") {
    // Ai(w) d/dw Ai(w e^{2 pi i/3}) - Ai'(w) Ai(w e^{2 pi i/3}) = e^{-i pi/6} / 2 pi.
    const cplx c = std::polar(1.0, -pi / 6.0) / (2.0 * pi);
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> r(0.0, 15.0), t(-pi, pi);
    for (int i = 0; i < 200; ++i) {
        const cplx w = std::polar(r(gen), t(gen));
        const AiryEval a = ai(w), b = ai_rotated(w, +1);
        const cplx e = std::exp(a.scale_exponent + b.scale_exponent);
        const cplx W = (a.value_mantissa * b.derivative_mantissa - a.derivative_mantissa * b.value_mantissa) * e;
        const double terms = std::abs(a.value_mantissa * b.derivative_mantissa * e) + std::abs(c);
        CAPTURE(w);
        CHECK(std::abs(W - c) <= 1e-10 * terms);
    }
}

TEST_CASE("property: connection identity") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> r(0.0, 20.0), t(-pi, pi);
    for (int i = 0; i < 200; ++i) {
        const cplx w = std::polar(r(gen), t(gen));
        const AiryEval a = ai(w), m = ai_rotated(w, -1), p = ai_rotated(w, +1);
        const double ref = std::max({a.scale_exponent.real(), m.scale_exponent.real(), p.scale_exponent.real()});
        const cplx t0 = a.value_mantissa * std::exp(a.scale_exponent - ref);
        const cplx tm = std::polar(1.0, pi / 3.0) * m.value_mantissa * std::exp(m.scale_exponent - ref);
        const cplx tp = std::polar(1.0, -pi / 3.0) * p.value_mantissa * std::exp(p.scale_exponent - ref);
        const double big = std::max({std::abs(t0), std::abs(tm), std::abs(tp)});
        CAPTURE(w);
        CHECK(std::abs(t0 - tm - tp) <= 1e-10 * big);
    }
}

TEST_CASE("method tags") {
    CHECK(ai(1.0).method_tag == AiryMethod::series);
    CHECK(ai(20.0).method_tag == AiryMethod::asymptotic);
    CHECK(ai(-20.0).method_tag == AiryMethod::rotated);
    CHECK(std::string(airy_method_name(AiryMethod::rotated)).size() > 0);
}
