#include "cdiv/algorithms.hpp"

#include <cmath>

namespace cdiv {

namespace {

constexpr double kOmega = 0x1.fffffffffffffp+1023;
constexpr double kMu = 0x1p-1022;
constexpr double kEps = 0x1p-52;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view algorithm_name(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::naive: return "naive";
        case AlgorithmId::smith: return "smith";
        case AlgorithmId::stewart: return "stewart";
        case AlgorithmId::annex_g: return "annex_g";
        case AlgorithmId::li: return "li";
        case AlgorithmId::priest: return "priest";
        case AlgorithmId::improved: return "improved";
        case AlgorithmId::robust: return "robust";
    }
    return "?";
}

std::optional<AlgorithmId> algorithm_from_name(std::string_view name) {
    for (AlgorithmId id : kAllAlgorithms)
        if (algorithm_name(id) == name) return id;
    return std::nullopt;
}

// --- naive ------------------------------------------------------------

Complex64 naive_divide(Complex64 x, Complex64 y) {
    const double a = x.re, b = x.im;
    const double c = y.re, d = y.im;
    const double den = c * c + d * d;
    const double e = (a * c + b * d) / den;
    const double f = (b * c - a * d) / den;
    return {e, f};
}

// --- smith ------------------------------------------------------------

SmithTrace smith_divide_traced(Complex64 x, Complex64 y) {
    const double a = x.re, b = x.im;
    const double c = y.re, d = y.im;
    SmithTrace tr;
    if (std::fabs(d) <= std::fabs(c)) {
        tr.r = d / c;
        tr.den = c + d * tr.r;
        tr.z.re = (a + b * tr.r) / tr.den;
        tr.z.im = (b - a * tr.r) / tr.den;
    } else {
        tr.swapped = true;
        tr.r = c / d;
        tr.den = c * tr.r + d;
        tr.z.re = (a * tr.r + b) / tr.den;
        tr.z.im = (b * tr.r - a) / tr.den;
    }
    return tr;
}

Complex64 smith_divide(Complex64 x, Complex64 y) {
    const double a = x.re, b = x.im;
    const double c = y.re, d = y.im;
    double e, f;
    if (std::fabs(d) <= std::fabs(c)) {
        const double r = d / c;
        const double den = c + d * r;
        e = (a + b * r) / den;
        f = (b - a * r) / den;
    } else {
        const double r = c / d;
        const double den = c * r + d;
        e = (a * r + b) / den;
        f = (b * r - a) / den;
    }
    return {e, f};
}

// --- stewart ----------------------------------------------------------

namespace {

// Three-factor product evaluated as (max * min) * mid by magnitude, so the
// partial product stays in range whenever the full product does. Magnitude
// ties go to the first-listed factor.
double ordered_product(double t1, double t2, double t3) {
    const double f[3] = {t1, t2, t3};
    int hi = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(f[i]) > std::fabs(f[hi])) hi = i;
    int lo = -1;
    for (int i = 0; i < 3; ++i) {
        if (i == hi) continue;
        if (lo < 0 || std::fabs(f[i]) < std::fabs(f[lo])) lo = i;
    }
    const int mid = 3 - hi - lo;
    return (f[hi] * f[lo]) * f[mid];
}

// Smith's kernel with the products b*(d/c) and a*(d/c) spread over the
// factors {b, d, 1/c} resp. {a, d, 1/c}; assumes |d| <= |c|.
void stewart_kernel(double a, double b, double c, double d, double& e,
                    double& f) {
    const double r = d / c;
    const double den = c + d * r;
    const double cinv = 1.0 / c;
    e = (a + ordered_product(b, d, cinv)) / den;
    f = (b - ordered_product(a, d, cinv)) / den;
}

}  // namespace

Complex64 stewart_divide(Complex64 x, Complex64 y) {
    double e, f;
    if (std::fabs(y.im) <= std::fabs(y.re)) {
        stewart_kernel(x.re, x.im, y.re, y.im, e, f);
    } else {
        // (b+ia)/(d+ic) = e - if, and the swap itself is error-free
        stewart_kernel(x.im, x.re, y.im, y.re, e, f);
        f = -f;
    }
    return {e, f};
}

// --- annex_g (C99 G.5.1 example implementation) ------------------------

Complex64 annex_g_divide(Complex64 x, Complex64 y) {
    double a = x.re, b = x.im;
    double c = y.re, d = y.im;

    int ilogbw = 0;
    const double logbw = std::logb(std::fmax(std::fabs(c), std::fabs(d)));
    if (std::isfinite(logbw)) {
        ilogbw = static_cast<int>(logbw);
        c = std::scalbn(c, -ilogbw);
        d = std::scalbn(d, -ilogbw);
    }
    const double denom = c * c + d * d;
    double e = std::scalbn((a * c + b * d) / denom, -ilogbw);
    double f = std::scalbn((b * c - a * d) / denom, -ilogbw);

    // Recover infinities and zeros that computed as NaN+iNaN.
    if (std::isnan(e) && std::isnan(f)) {
        if (denom == 0.0 && (!std::isnan(a) || !std::isnan(b))) {
            e = std::copysign(kInf, c) * a;
            f = std::copysign(kInf, c) * b;
        } else if ((std::isinf(a) || std::isinf(b)) && std::isfinite(c) &&
                   std::isfinite(d)) {
            a = std::copysign(std::isinf(a) ? 1.0 : 0.0, a);
            b = std::copysign(std::isinf(b) ? 1.0 : 0.0, b);
            e = kInf * (a * c + b * d);
            f = kInf * (b * c - a * d);
        } else if (std::isinf(logbw) && std::isfinite(a) && std::isfinite(b)) {
            c = std::copysign(std::isinf(c) ? 1.0 : 0.0, c);
            d = std::copysign(std::isinf(d) ? 1.0 : 0.0, d);
            e = 0.0 * (a * c + b * d);
            f = 0.0 * (b * c - a * d);
        }
    }
    return {e, f};
}

// --- li ----------------------------------------------------------------

Complex64 li_divide(Complex64 x, Complex64 y) {
    double a = x.re, b = x.im;
    double c = y.re, d = y.im;

    const double ab = std::fmax(std::fabs(a), std::fabs(b));
    const double cd = std::fmax(std::fabs(c), std::fabs(d));
    const double be = 2.0 / (kEps * kEps);
    const double down = kOmega / 16.0;
    const double up = kMu * 16.0 / kEps;

    double s = 1.0;
    if (ab >= down) { a /= 16.0; b /= 16.0; s *= 16.0; }
    if (cd >= down) { c /= 16.0; d /= 16.0; s /= 16.0; }
    if (ab <= up) { a *= be; b *= be; s /= be; }
    if (cd <= up) { c *= be; d *= be; s *= be; }

    const Complex64 z = smith_divide({a, b}, {c, d});
    return {z.re * s, z.im * s};
}

// --- priest -------------------------------------------------------------

namespace {

int high_word(double v) {
    return static_cast<int>((double_bits(v) >> 32) & 0x7fffffff);
}

double from_high_word(int hs) {
    return double_from_bits(static_cast<uint64_t>(static_cast<uint32_t>(hs))
                            << 32);
}

}  // namespace

Complex64 priest_divide(Complex64 x, Complex64 y) {
    const double a = x.re, b = x.im;
    double c = y.re, d = y.im;

    const int ha = high_word(a);
    const int hb = high_word(b);
    const int hc = high_word(c);
    const int hd = high_word(d);
    const int hz = ha > hb ? ha : hb;
    const int hw = hc > hd ? hc : hd;

    int hs;
    if (hz < 0x07200000 && hw >= 0x32800000 && hw < 0x47100000) {
        // tiny numerator over a mid-range denominator: pick a larger scale
        // so the numerator products clear the subnormal range
        hs = (((0x47100000 - hw) >> 1) & 0xfff00000) + 0x3ff00000;
    } else {
        // s, a power of two close to |y|^(-3/4)
        hs = (((hw >> 2) - hw) + 0x6fd7ffff) & 0xfff00000;
    }
    const double s = from_high_word(hs);

    c *= s;
    d *= s;
    const double t = 1.0 / (c * c + d * d);
    c *= s;
    d *= s;
    const double e = (a * c + b * d) * t;
    const double f = (b * c - a * d) * t;
    return {e, f};
}

// --- improved ------------------------------------------------------------

namespace {

// Assumes |d| <= |c|.
void improved_kernel(double a, double b, double c, double d, double& e,
                     double& f) {
    const double r = d / c;
    const double t = 1.0 / (c + d * r);
    if (r != 0.0) {
        e = (a + b * r) * t;
        f = (b - a * r) * t;
    } else {
        e = (a + d * (b / c)) * t;
        f = (b - d * (a / c)) * t;
    }
}

}  // namespace

Complex64 improved_divide(Complex64 x, Complex64 y) {
    double e, f;
    if (std::fabs(y.im) <= std::fabs(y.re)) {
        improved_kernel(x.re, x.im, y.re, y.im, e, f);
    } else {
        improved_kernel(x.im, x.re, y.im, y.re, e, f);
        f = -f;
    }
    return {e, f};
}

// --- robust ----------------------------------------------------------------

namespace {

// Real part of (a+ib)/(c+id) given r = d/c and t = 1/(c+d*r); the underflow
// of b*r is handled by reassociating to a*t + (b*t)*r.
double robust_compreal(double a, double b, double c, double d, double r,
                       double t) {
    if (r != 0.0) {
        const double br = b * r;
        if (br != 0.0) return (a + br) * t;
        return a * t + (b * t) * r;
    }
    return (a + d * (b / c)) * t;
}

// Assumes |d| <= |c|. The imaginary part of (a+ib)/(c+id) is the real part
// of (b-ia)/(c+id).
void robust_kernel(double a, double b, double c, double d, double& e,
                   double& f) {
    const double r = d / c;
    const double t = 1.0 / (c + d * r);
    e = robust_compreal(a, b, c, d, r, t);
    f = robust_compreal(b, -a, c, d, r, t);
}

Complex64 robust_internal(Complex64 x, Complex64 y) {
    double e, f;
    if (std::fabs(y.im) <= std::fabs(y.re)) {
        robust_kernel(x.re, x.im, y.re, y.im, e, f);
    } else {
        robust_kernel(x.im, x.re, y.im, y.re, e, f);
        f = -f;
    }
    return {e, f};
}

}  // namespace

RobustTrace robust_divide_traced(Complex64 x, Complex64 y) {
    RobustTrace tr;
    const double ab = std::fmax(std::fabs(x.re), std::fabs(x.im));
    const double cd = std::fmax(std::fabs(y.re), std::fabs(y.im));
    const double be = tr.scale.be;
    const double down = kOmega / 2.0;
    const double up = kMu * 2.0 / kEps;

    double s = 1.0;
    if (ab >= down) { x.re /= 2.0; x.im /= 2.0; s *= 2.0; }
    if (cd >= down) { y.re /= 2.0; y.im /= 2.0; s /= 2.0; }
    if (ab <= up) { x.re *= be; x.im *= be; s /= be; }
    if (cd <= up) { y.re *= be; y.im *= be; s *= be; }

    tr.scale.s = s;
    tr.scaled_x = x;
    tr.scaled_y = y;
    tr.internal = robust_internal(x, y);
    tr.z = {tr.internal.re * s, tr.internal.im * s};
    return tr;
}

Complex64 robust_divide(Complex64 x, Complex64 y) {
    const double ab = std::fmax(std::fabs(x.re), std::fabs(x.im));
    const double cd = std::fmax(std::fabs(y.re), std::fabs(y.im));
    const double be = 2.0 / (kEps * kEps);
    const double down = kOmega / 2.0;
    const double up = kMu * 2.0 / kEps;

    double s = 1.0;
    if (ab >= down) { x.re /= 2.0; x.im /= 2.0; s *= 2.0; }
    if (cd >= down) { y.re /= 2.0; y.im /= 2.0; s /= 2.0; }
    if (ab <= up) { x.re *= be; x.im *= be; s /= be; }
    if (cd <= up) { y.re *= be; y.im *= be; s *= be; }

    const Complex64 z = robust_internal(x, y);
    return {z.re * s, z.im * s};
}

// --- dispatch ---------------------------------------------------------------

DivideFn divide_fn(AlgorithmId alg) {
    switch (alg) {
        case AlgorithmId::naive: return &naive_divide;
        case AlgorithmId::smith: return &smith_divide;
        case AlgorithmId::stewart: return &stewart_divide;
        case AlgorithmId::annex_g: return &annex_g_divide;
        case AlgorithmId::li: return &li_divide;
        case AlgorithmId::priest: return &priest_divide;
        case AlgorithmId::improved: return &improved_divide;
        case AlgorithmId::robust: return &robust_divide;
    }
    return &naive_divide;
}

Complex64 divide(AlgorithmId alg, Complex64 x, Complex64 y) {
    return divide_fn(alg)(x, y);
}

}  // namespace cdiv
