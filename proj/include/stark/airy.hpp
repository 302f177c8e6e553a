#pragma once

#include <complex>

namespace stark {

using cplx = std::complex<double>;

enum class AiryMethod { series, asymptotic, rotated };

const char* airy_method_name(AiryMethod m);

// Ai(w) = value_mantissa * exp(scale_exponent), Ai'(w) = derivative_mantissa * exp(scale_exponent).
// scale_exponent is -(2/3) w^{3/2} on the principal branch of the evaluated argument.
struct AiryEval {
    cplx value_mantissa;
    cplx derivative_mantissa;
    cplx scale_exponent;
    AiryMethod method_tag = AiryMethod::series;

    cplx value() const { return value_mantissa * std::exp(scale_exponent); }
    cplx derivative() const { return derivative_mantissa * std::exp(scale_exponent); }
};

// Maclaurin series (extended precision) inside this radius, asymptotic expansion outside.
inline constexpr double kAirySeriesRadius = 8.0;

AiryEval ai(cplx w);

// Ai(w e^{2 pi i sector / 3}) with sector = +1 or -1. The derivative is taken with respect to w,
// so it carries the factor e^{2 pi i sector / 3}. scale_exponent belongs to the rotated argument.
AiryEval ai_rotated(cplx w, int sector);

// Ai'(w) / Ai(w). Throws NumericalError(pole_proximity) when |value_mantissa| < 1e-12.
cplx ai_logderiv(cplx w);

// On the oscillatory side |arg w| > 2 pi / 3:
//   Ai(w)  = coeff_plus  e^{phase} + coeff_minus  e^{-phase}
//   Ai'(w) = dcoeff_plus e^{phase} + dcoeff_minus e^{-phase}
// with phase = i (2/3) (-w)^{3/2}. Throws NumericalError(sector) elsewhere.
struct OscillatoryParts {
    cplx coeff_plus;
    cplx coeff_minus;
    cplx dcoeff_plus;
    cplx dcoeff_minus;
    cplx phase;
};

OscillatoryParts decompose_oscillatory(cplx w);

// Individual branches, exposed for cross-validation.
AiryEval ai_series(cplx w);
AiryEval ai_asymptotic(cplx w); // requires |arg w| <= 2 pi / 3

} // namespace stark
