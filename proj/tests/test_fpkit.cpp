#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "cdiv/fpkit.hpp"
#include "cdiv/oracle.hpp"

using namespace cdiv;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

TEST_CASE("binary64 format constants") {
    const FloatFormat fmt = binary64();
    CHECK(fmt.radix == 2);
    CHECK(fmt.precision == 53);
    CHECK(fmt.exponent_bits == 11);
    CHECK(fmt.e_min == -1022);
    CHECK(fmt.e_max == 1023);
    CHECK(fmt.omega == std::numeric_limits<double>::max());
    CHECK(fmt.mu == std::numeric_limits<double>::min());
    CHECK(fmt.alpha == std::numeric_limits<double>::denorm_min());
    CHECK(fmt.eps == std::numeric_limits<double>::epsilon());
    CHECK(fmt.unit_roundoff == fmt.eps / 2.0);
    CHECK(fmt.omega == (2.0 - fmt.eps) * 0x1p1023);
    CHECK(fmt.alpha == std::ldexp(fmt.mu, 1 - fmt.precision));
}

TEST_CASE("alpha = 4*eps/((1-u)*Omega) holds within one ulp") {
    const FloatFormat fmt = binary64();
    const double rhs = 4.0 * fmt.eps / ((1.0 - fmt.unit_roundoff) * fmt.omega);
    CHECK(std::fabs(rhs - fmt.alpha) <= fmt.alpha);
    CHECK(rhs == fmt.alpha);  // exact on this platform
}

TEST_CASE("bits_of_accuracy: exact matches") {
    const auto acc = bits_of_accuracy(0x1p346, 0x1p346);
    CHECK(acc.bits == 53);
    CHECK(acc.exact());

    CHECK(bits_of_accuracy(0.0, -0.0).bits == 53);
    CHECK(bits_of_accuracy(-0.0, 0.0).exact());
    CHECK(bits_of_accuracy(kInf, kInf).bits == 53);
    CHECK(bits_of_accuracy(-kInf, -kInf).bits == 53);
}

TEST_CASE("bits_of_accuracy: total failures score zero with infinite relerr") {
    // computed zero against a nonzero reference
    auto acc = bits_of_accuracy(0.0, 0x1p-1008);
    CHECK(acc.bits == 0);
    CHECK(acc.rel_err == kInf);

    // nonzero against a zero reference
    acc = bits_of_accuracy(0x1p-300, 0.0);
    CHECK(acc.bits == 0);
    CHECK(acc.rel_err == kInf);

    // wrong or missing infinity
    CHECK(bits_of_accuracy(kInf, -kInf).bits == 0);
    CHECK(bits_of_accuracy(1.0, kInf).bits == 0);
    CHECK(bits_of_accuracy(kNaN, 1.0).bits == 0);
    CHECK(bits_of_accuracy(kInf, 1.0).bits == 0);
}

TEST_CASE("bits_of_accuracy: one-ulp error near 0.6") {
    const double expected = 0.6;
    const double computed = 0.6000000000000001;  // next double up
    CHECK(computed == std::nextafter(expected, 1.0));

    // independent derivation of the relative error over the rationals
    const ExactRational diff = ExactRational::from_double(computed) -
                               ExactRational::from_double(expected);
    const ExactRational rel = diff / ExactRational::from_double(expected);
    const double rel_d = rel.round_to_double();

    const auto acc = bits_of_accuracy(computed, expected);
    CHECK(acc.bits == 52);
    CHECK(acc.rel_err.value() == doctest::Approx(1.85e-16).epsilon(0.01));
    CHECK(acc.rel_err.value() == doctest::Approx(rel_d).epsilon(1e-12));
}

TEST_CASE("bits_of_accuracy rejects NaN reference") {
    CHECK_THROWS_AS(bits_of_accuracy(1.0, kNaN), std::invalid_argument);
}

TEST_CASE("bits_of_accuracy: negation symmetry") {
    for (uint64_t k = 0; k < 2000; ++k) {
        const double x = double_from_bits(counter_rng(7, 2 * k));
        const double y = double_from_bits(counter_rng(7, 2 * k + 1));
        if (std::isnan(y)) continue;
        const auto p = bits_of_accuracy(x, y);
        const auto n = bits_of_accuracy(-x, -y);
        CHECK(p.bits == n.bits);
        CHECK(p.rel_err == n.rel_err);
    }
}

TEST_CASE("bits_of_accuracy: non-increasing as the perturbation grows") {
    const double expected = 0x1.91eb851eb851fp+1;  // ~3.14
    int prev = 54;
    for (int k = 52; k >= 1; --k) {
        const double computed = expected * (1.0 + std::ldexp(1.0, -k));
        const int bits = bits_of_accuracy(computed, expected).bits;
        CHECK(bits <= prev);
        prev = bits;
    }
    CHECK(bits_of_accuracy(expected, expected).bits == 53);
}

TEST_CASE("complex_accuracy combines component scores") {
    const Complex64 z{0x1p-1023, -0x1p-1023};
    CHECK(complex_accuracy(z, z).min_bits == 53);

    // one part completely wrong
    const Complex64 expected{0x1p346, -0x1p-1008};
    const Complex64 computed{1.43e104, 0.0};
    CHECK(complex_accuracy(computed, expected).min_bits == 0);

    // one part a single ulp off, the other exact
    const Complex64 near{std::nextafter(0x1p346, kInf), -0x1p-1008};
    const AccuracyResult acc = complex_accuracy(near, expected);
    CHECK(acc.re.bits == 52);
    CHECK(acc.im.bits == 53);
    CHECK(acc.min_bits == 52);
}

TEST_CASE("hexfloat formatting") {
    CHECK(format_hexfloat(0x1p1023) == "0x1p1023");
    CHECK(format_hexfloat(0.0) == "0x0p0");
    CHECK(format_hexfloat(-0.0) == "-0x0p0");
    CHECK(format_hexfloat(0x1p-1074) == "0x1p-1074");
    CHECK(format_hexfloat(0.6) == "0x1.3333333333333p-1");
    CHECK(format_hexfloat(0.2) == "0x1.999999999999ap-3");
    CHECK(format_hexfloat(-3.0) == "-0x1.8p1");
    CHECK(format_hexfloat(kInf) == "inf");
    CHECK(format_hexfloat(-kInf) == "-inf");
    CHECK(format_hexfloat(kNaN) == "nan");
}

TEST_CASE("hexfloat parsing") {
    CHECK(parse_hexfloat("0x1.0p1023") == 0x1p1023);
    CHECK(parse_hexfloat("0x1p-1074") == 0x1p-1074);
    CHECK(parse_hexfloat("-0x1.8p1") == -3.0);
    CHECK(parse_hexfloat("inf") == kInf);
    CHECK(parse_hexfloat("-inf") == -kInf);
    CHECK(std::isnan(parse_hexfloat("nan")));
    CHECK(same_bits(parse_hexfloat("-0x0p0"), -0.0));

    CHECK_THROWS_AS(parse_hexfloat(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_hexfloat("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hexfloat("0x1p3q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hexfloat("0x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hexfloat("pony"), std::invalid_argument);
}

TEST_CASE("hexfloat round trip over random bit patterns") {
    uint64_t nan_count = 0;
    for (uint64_t k = 0; k < 1000000; ++k) {
        const uint64_t bits = counter_rng(99, k);
        const double v = double_from_bits(bits);
        const double back = parse_hexfloat(format_hexfloat(v));
        if (std::isnan(v)) {
            ++nan_count;
            CHECK(std::isnan(back));
        } else {
            CHECK(double_bits(back) == bits);
        }
    }
    CHECK(nan_count > 0);  // the sweep did hit NaN patterns
}

TEST_CASE("sample_operands is a pure function of (seed, index)") {
    const SampledOperands p = sample_operands(42, 0);
    const SampledOperands q = sample_operands(42, 0);
    CHECK(same_bits(p.a, q.a));
    CHECK(same_bits(p.b, q.b));
    CHECK(same_bits(p.c, q.c));
    CHECK(same_bits(p.d, q.d));

    const SampledOperands r = sample_operands(43, 0);
    const bool differs = !same_bits(p.a, r.a) || !same_bits(p.b, r.b) ||
                         !same_bits(p.c, r.c) || !same_bits(p.d, r.d);
    CHECK(differs);
}

TEST_CASE("sampled operands are signed powers of two in range") {
    for (uint64_t k = 0; k < 20000; ++k) {
        const SampledOperands ops = sample_operands(5, k);
        const double vals[4] = {ops.a, ops.b, ops.c, ops.d};
        for (int i = 0; i < 4; ++i) {
            const double v = std::fabs(vals[i]);
            CHECK(v >= 0x1p-1074);
            CHECK(v <= 0x1p1023);
            int e = 0;
            CHECK(std::frexp(v, &e) == 0.5);  // unit significand
            CHECK(ops.exponent[i] >= -1074);
            CHECK(ops.exponent[i] <= 1023);
            CHECK(std::ldexp(static_cast<double>(ops.sign[i]), ops.exponent[i]) ==
                  vals[i]);
        }
    }
}

TEST_CASE("sampled exponents are uniform over the 2098 values") {
    constexpr int kBins = 2098;
    constexpr uint64_t kDraws = 100000;  // 4 exponents each
    std::map<int, uint64_t> hist;
    uint64_t positive_signs = 0;
    for (uint64_t k = 0; k < kDraws; ++k) {
        const SampledOperands ops = sample_operands(11, k);
        for (int i = 0; i < 4; ++i) {
            ++hist[ops.exponent[i]];
            if (ops.sign[i] > 0) ++positive_signs;
        }
    }
    const double n = 4.0 * kDraws;
    const double p = 1.0 / kBins;
    const double mean = n * p;
    const double sigma = std::sqrt(n * p * (1.0 - p));

    CHECK(hist.size() == kBins);  // every exponent value appears
    double chi2 = 0.0;
    for (const auto& [exp, count] : hist) {
        CHECK(std::fabs(static_cast<double>(count) - mean) <= 5.0 * sigma);
        const double dev = static_cast<double>(count) - mean;
        chi2 += dev * dev / mean;
    }
    // chi-square with 2097 degrees of freedom: mean df, sd sqrt(2*df)
    const double df = kBins - 1;
    CHECK(chi2 > df - 5.0 * std::sqrt(2.0 * df));
    CHECK(chi2 < df + 5.0 * std::sqrt(2.0 * df));

    // signs are balanced
    const double sign_sigma = std::sqrt(n * 0.25);
    CHECK(std::fabs(static_cast<double>(positive_signs) - n / 2) <=
          5.0 * sign_sigma);
}
