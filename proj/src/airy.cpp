#include "stark/airy.hpp"

#include "stark/error.hpp"

#include <cmath>
#include <numbers>

namespace stark {

namespace {

using std::numbers::pi;

// Minimal complex arithmetic over __float128; the series needs nothing beyond + and *.
using quad = __float128;

struct qc {
    quad re = 0, im = 0;
};

qc operator+(qc a, qc b) { return {a.re + b.re, a.im + b.im}; }
qc operator-(qc a, qc b) { return {a.re - b.re, a.im - b.im}; }
qc operator*(qc a, qc b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
qc operator*(qc a, quad s) { return {a.re * s, a.im * s}; }
quad norm1(qc a) { return (a.re < 0 ? -a.re : a.re) + (a.im < 0 ? -a.im : a.im); }
cplx to_double(qc a) { return {static_cast<double>(a.re), static_cast<double>(a.im)}; }

// Ai(0) and -Ai'(0) split into double hi/lo parts.
const quad kAi0 = quad(0.3550280538878172) + quad(2.05233632436212e-17);
const quad kDAi0 = quad(0.2588194037928068) + quad(-2.522243111610832e-17);

cplx normalize(cplx w) {
    // Fold -0.0 onto +0.0 so the principal branch is deterministic on the negative axis.
    return {w.real(), w.imag() == 0.0 ? 0.0 : w.imag()};
}

cplx zeta_of(cplx w) { return (2.0 / 3.0) * w * std::sqrt(w); }

// Rotate by e^{2 pi i s / 3}, keeping exact axis values where possible.
cplx rotate(cplx w, int s) {
    const cplx r = std::polar(1.0, 2.0 * pi * s / 3.0);
    return normalize(w * r);
}

} // namespace

const char* airy_method_name(AiryMethod m) {
    switch (m) {
    case AiryMethod::series: return "series";
    case AiryMethod::asymptotic: return "asymptotic";
    case AiryMethod::rotated: return "rotated";
    }
    return "unknown";
}

AiryEval ai_series(cplx w) {
    w = normalize(w);
    const qc z{w.real(), w.imag()};
    const qc z2 = z * z;
    const qc z3 = z2 * z;

    // Ai = Ai(0) f - |Ai'(0)| g with f = sum a_k z^{3k}, g = sum b_k z^{3k+1}.
    qc tf{1, 0}, tg = z;       // a_k z^{3k}, b_k z^{3k+1}
    qc tfp{0, 0}, tgp{1, 0};   // 3k a_k z^{3k-1}, (3k+1) b_k z^{3k}
    qc f = tf, g = tg, fp = tfp, gp = tgp;
    quad peak = norm1(tf) + norm1(tg) + norm1(tgp);
    for (int k = 1; k < 400; ++k) {
        const quad k3 = 3 * k;
        tfp = tf * z2 * (quad(1) / (k3 - 1));
        tf = tf * z3 * (quad(1) / ((k3 - 1) * k3));
        tg = tg * z3 * (quad(1) / (k3 * (k3 + 1)));
        tgp = tgp * z3 * (quad(1) / ((k3 - 2) * k3));
        f = f + tf;
        g = g + tg;
        fp = fp + tfp;
        gp = gp + tgp;
        const quad mag = norm1(tf) + norm1(tg) + norm1(tfp) + norm1(tgp);
        if (mag > peak) peak = mag;
        if (k > 3 && mag < peak * quad(1e-34)) break;
    }

    const qc value = f * kAi0 - g * kDAi0;
    const qc deriv = fp * kAi0 - gp * kDAi0;

    AiryEval out;
    out.scale_exponent = -zeta_of(w);
    const cplx unscale = std::exp(-out.scale_exponent);
    out.value_mantissa = to_double(value) * unscale;
    out.derivative_mantissa = to_double(deriv) * unscale;
    out.method_tag = AiryMethod::series;
    return out;
}

AiryEval ai_asymptotic(cplx w) {
    w = normalize(w);
    const cplx zeta = zeta_of(w);
    const cplx inv = 1.0 / zeta;
    cplx su = 1.0, sv = 1.0;
    cplx pw = 1.0;
    double u = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        pw *= -inv;
        const cplx tu = u * pw, tv = v * pw;
        const double mag = std::abs(tu) + std::abs(tv);
        if (mag > last) break; // past the smallest term
        su += tu;
        sv += tv;
        last = mag;
        if (mag < 1e-18) break;
    }
    const cplx q = std::sqrt(std::sqrt(w));
    const double c = 0.5 / std::sqrt(pi);
    AiryEval out;
    out.value_mantissa = c * su / q;
    out.derivative_mantissa = -c * q * sv;
    out.scale_exponent = -zeta;
    out.method_tag = AiryMethod::asymptotic;
    return out;
}

AiryEval ai(cplx w) {
    w = normalize(w);
    if (std::abs(w) <= kAirySeriesRadius) return ai_series(w);
    if (std::abs(std::arg(w)) <= 2.0 * pi / 3.0) return ai_asymptotic(w);

    // Anti-Stokes side: Ai(w) = e^{i pi/3} Ai(w e^{-2 pi i/3}) + e^{-i pi/3} Ai(w e^{2 pi i/3}).
    const AiryEval a = ai_asymptotic(rotate(w, -1));
    const AiryEval b = ai_asymptotic(rotate(w, +1));
    const cplx s = -zeta_of(w);
    const cplx ea = std::exp(a.scale_exponent - s);
    const cplx eb = std::exp(b.scale_exponent - s);
    const cplx p3 = std::polar(1.0, pi / 3.0);
    const cplx m3 = std::conj(p3);
    AiryEval out;
    out.value_mantissa = p3 * a.value_mantissa * ea + m3 * b.value_mantissa * eb;
    out.derivative_mantissa = m3 * a.derivative_mantissa * ea + p3 * b.derivative_mantissa * eb;
    out.scale_exponent = s;
    out.method_tag = AiryMethod::rotated;
    return out;
}

AiryEval ai_rotated(cplx w, int sector) {
    if (sector != 1 && sector != -1) throw DomainError("ai_rotated: sector must be +1 or -1");
    AiryEval e = ai(rotate(w, sector));
    e.derivative_mantissa *= std::polar(1.0, 2.0 * pi * sector / 3.0);
    e.method_tag = AiryMethod::rotated;
    return e;
}

cplx ai_logderiv(cplx w) {
    const AiryEval e = ai(w);
    if (std::abs(e.value_mantissa) < 1e-12)
        throw NumericalError(Failure::pole_proximity, "Ai(w) vanishes to working precision");
    return e.derivative_mantissa / e.value_mantissa;
}

OscillatoryParts decompose_oscillatory(cplx w) {
    w = normalize(w);
    if (std::abs(std::arg(w)) <= 2.0 * pi / 3.0)
        throw NumericalError(Failure::sector, "decompose_oscillatory: argument on the recessive side");
    const cplx mw = normalize(-w);
    const cplx phase = cplx(0.0, 2.0 / 3.0) * mw * std::sqrt(mw);
    const AiryEval a = ai(rotate(w, -1)); // carries e^{-phase}
    const AiryEval b = ai(rotate(w, +1)); // carries e^{+phase}
    const cplx ea = std::exp(a.scale_exponent + phase);
    const cplx eb = std::exp(b.scale_exponent - phase);
    const cplx p3 = std::polar(1.0, pi / 3.0);
    const cplx m3 = std::conj(p3);
    OscillatoryParts out;
    out.phase = phase;
    out.coeff_plus = m3 * b.value_mantissa * eb;
    out.coeff_minus = p3 * a.value_mantissa * ea;
    out.dcoeff_plus = p3 * b.derivative_mantissa * eb;
    out.dcoeff_minus = m3 * a.derivative_mantissa * ea;
    return out;
}

} // namespace stark
