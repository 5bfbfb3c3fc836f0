#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cdiv {

// Parameters of the IEEE 754-2008 binary64 format.
struct FloatFormat {
    int radix;
    int precision;       // significand bits, including the implicit bit
    int exponent_bits;
    int e_min;
    int e_max;
    double omega;          // largest finite normal
    double mu;             // smallest positive normal
    double alpha;          // smallest positive subnormal
    double eps;            // machine epsilon, 2^(1-p)
    double unit_roundoff;  // eps/2
};

constexpr FloatFormat binary64() {
    return FloatFormat{
        2,
        53,
        11,
        -1022,
        1023,
        0x1.fffffffffffffp+1023,
        0x1p-1022,
        0x1p-1074,
        0x1p-52,
        0x1p-53,
    };
}

// A complex number as a raw pair of binary64 components. NaN, infinities,
// signed zeros and subnormals all pass through untouched.
struct Complex64 {
    double re = 0.0;
    double im = 0.0;
};

inline Complex64 conj(Complex64 z) { return {z.re, -z.im}; }

uint64_t double_bits(double v);
double double_from_bits(uint64_t bits);
bool same_bits(double a, double b);
bool same_bits(Complex64 a, Complex64 b);

// --- accuracy metric ------------------------------------------------------

// Accuracy of one binary64 component. rel_err is empty when the computed
// value matches the expected one bit for bit (+0 and -0 count as equal);
// it is +Inf when the result has no usable bits at all (NaN, wrong or
// missing infinity, zero vs. nonzero).
struct PartAccuracy {
    int bits = 0;  // clamp(floor(-log2(rel_err)), 0, 53); 53 when exact
    std::optional<double> rel_err;

    bool exact() const { return !rel_err.has_value(); }
};

// Throws std::invalid_argument if expected is NaN.
PartAccuracy bits_of_accuracy(double computed, double expected);

struct AccuracyResult {
    PartAccuracy re;
    PartAccuracy im;
    int min_bits = 0;
};

AccuracyResult complex_accuracy(Complex64 computed, Complex64 expected);

// --- hex-float text form --------------------------------------------------

// Canonical lower-case hex-float literal: "0x1.f8p-729", "-0x1p1023",
// "0x0p0", "inf", "-inf", "nan". Subnormals are printed normalized
// (mantissa in [1,2)), so the exponent may go below -1022.
std::string format_hexfloat(double v);

// Parses what format_hexfloat produces plus any strtod-accepted hex-float
// spelling; "inf"/"-inf"/"nan" (any case) are accepted. Any NaN input maps
// to the canonical quiet NaN. Throws std::invalid_argument naming the
// offending token on malformed input.
double parse_hexfloat(std::string_view text);

// --- randomized operands --------------------------------------------------

// Keyed SplitMix64 stream evaluated at an absolute position, so a value
// depends only on (seed, position) and any partition of the positions
// across workers reads the same stream.
uint64_t counter_rng(uint64_t seed, uint64_t position);

// 53-bit uniform draw in [0,1).
double uniform01(uint64_t seed, uint64_t position);

// One randomized operand quadruple: each component is s*2^n with sign s
// uniform on {-1,+1} and exponent n uniform on {-1074,...,1023}.
struct SampledOperands {
    double a = 0, b = 0, c = 0, d = 0;
    std::array<int, 4> sign{};      // -1 or +1, order a,b,c,d
    std::array<int, 4> exponent{};  // in [-1074, 1023]
    uint64_t seed = 0;
    uint64_t trial_index = 0;

    Complex64 x() const { return {a, b}; }
    Complex64 y() const { return {c, d}; }
};

SampledOperands sample_operands(uint64_t seed, uint64_t trial_index);

}  // namespace cdiv
