#include "cdiv/fpkit.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace cdiv {

uint64_t double_bits(double v) { return std::bit_cast<uint64_t>(v); }

double double_from_bits(uint64_t bits) { return std::bit_cast<double>(bits); }

bool same_bits(double a, double b) { return double_bits(a) == double_bits(b); }

bool same_bits(Complex64 a, Complex64 b) {
    return same_bits(a.re, b.re) && same_bits(a.im, b.im);
}

// --- accuracy metric ------------------------------------------------------

namespace {

// floor(-log2(x)) for finite x > 0, computed from the exponent so there is
// no transcendental rounding to worry about at power-of-two boundaries.
int floor_neg_log2(double x) {
    int e = 0;
    const double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
    return m == 0.5 ? 1 - e : -e;
}

}  // namespace

PartAccuracy bits_of_accuracy(double computed, double expected) {
    if (std::isnan(expected))
        throw std::invalid_argument("bits_of_accuracy: expected value is NaN");

    const bool both_zero = computed == 0.0 && expected == 0.0;
    if (same_bits(computed, expected) || both_zero) return {53, std::nullopt};

    const double inf = std::numeric_limits<double>::infinity();
    if (std::isnan(computed) || std::isinf(expected) || expected == 0.0 ||
        computed == 0.0)
        return {0, inf};

    const double rel_err = std::fabs(computed - expected) / std::fabs(expected);
    int bits = floor_neg_log2(rel_err);
    if (bits < 0) bits = 0;
    if (bits > 53) bits = 53;
    return {bits, rel_err};
}

AccuracyResult complex_accuracy(Complex64 computed, Complex64 expected) {
    AccuracyResult res;
    res.re = bits_of_accuracy(computed.re, expected.re);
    res.im = bits_of_accuracy(computed.im, expected.im);
    res.min_bits = res.re.bits < res.im.bits ? res.re.bits : res.im.bits;
    return res;
}

// --- hex-float text form --------------------------------------------------

std::string format_hexfloat(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";

    std::string out = std::signbit(v) ? "-" : "";
    if (v == 0.0) {
        out += "0x0p0";
        return out;
    }

    int e2 = 0;
    const double m = std::frexp(std::fabs(v), &e2);  // m in [0.5, 1)
    const auto m53 = static_cast<uint64_t>(std::ldexp(m, 53));
    const uint64_t frac = m53 & ((uint64_t{1} << 52) - 1);
    const int pexp = e2 - 1;  // value = 1.frac * 2^pexp

    char buf[40];
    if (frac == 0) {
        std::snprintf(buf, sizeof buf, "0x1p%d", pexp);
    } else {
        char digits[14];
        std::snprintf(digits, sizeof digits, "%013llx",
                      static_cast<unsigned long long>(frac));
        int len = 13;
        while (len > 1 && digits[len - 1] == '0') --len;
        digits[len] = '\0';
        std::snprintf(buf, sizeof buf, "0x1.%sp%d", digits, pexp);
    }
    out += buf;
    return out;
}

namespace {

[[noreturn]] void bad_literal(std::string_view text) {
    throw std::invalid_argument("invalid hex-float literal: '" +
                                std::string(text) + "'");
}

}  // namespace

double parse_hexfloat(std::string_view text) {
    if (text.empty() || text.size() > 64) bad_literal(text);

    std::string_view body = text;
    if (body.front() == '+' || body.front() == '-') body.remove_prefix(1);
    if (body.empty()) bad_literal(text);

    const char head = static_cast<char>(std::tolower(body.front()));
    const bool is_hex = body.size() > 1 && body[0] == '0' &&
                        (body[1] == 'x' || body[1] == 'X');
    const bool is_word = head == 'i' || head == 'n';
    if (!is_hex && !is_word) bad_literal(text);

    char buf[65];
    std::memcpy(buf, text.data(), text.size());
    buf[text.size()] = '\0';

    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf, &end);
    if (end != buf + text.size() || end == buf) bad_literal(text);
    if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
    return v;
}

// --- randomized operands --------------------------------------------------

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Unbiased up to O(n/2^64): maps a 64-bit word onto [0, n).
uint32_t bounded(uint64_t word, uint32_t n) {
    return static_cast<uint32_t>(
        (static_cast<unsigned __int128>(word) * n) >> 64);
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;
constexpr uint64_t kWordsPerTrial = 5;

}  // namespace

uint64_t counter_rng(uint64_t seed, uint64_t position) {
    return mix64(seed + (position + 1) * kGolden);
}

double uniform01(uint64_t seed, uint64_t position) {
    return static_cast<double>(counter_rng(seed, position) >> 11) * 0x1p-53;
}

SampledOperands sample_operands(uint64_t seed, uint64_t trial_index) {
    SampledOperands ops;
    ops.seed = seed;
    ops.trial_index = trial_index;

    const uint64_t base = trial_index * kWordsPerTrial;
    const uint64_t sign_word = counter_rng(seed, base + 4);
    double* value[4] = {&ops.a, &ops.b, &ops.c, &ops.d};
    for (int i = 0; i < 4; ++i) {
        ops.exponent[i] =
            -1074 + static_cast<int>(bounded(counter_rng(seed, base + i), 2098));
        ops.sign[i] = (sign_word >> i) & 1 ? -1 : 1;
        *value[i] = std::ldexp(static_cast<double>(ops.sign[i]), ops.exponent[i]);
    }
    return ops;
}

}  // namespace cdiv
