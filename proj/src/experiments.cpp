#include "cdiv/experiments.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cdiv/oracle.hpp"

namespace cdiv {

namespace {

constexpr double kAlpha = 0x1p-1074;
constexpr double kOmega = 0x1.fffffffffffffp+1023;

FailureEstimate make_estimate(AlgorithmId alg, uint64_t n, uint64_t t,
                              int threshold, uint64_t seed) {
    FailureEstimate est;
    est.algorithm = alg;
    est.trials = n;
    est.failures = t;
    est.fail_threshold_bits = threshold;
    est.seed = seed;
    est.p_hat = static_cast<double>(t) / static_cast<double>(n);
    est.variance = est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n);
    const double half = 1.96 * std::sqrt(est.variance);
    est.ci_low = std::fmax(est.p_hat - half, 0.0);
    est.ci_high = std::fmin(est.p_hat + half, 1.0);
    return est;
}

bool non_finite(Complex64 z) {
    return !std::isfinite(z.re) || !std::isfinite(z.im);
}

bool trial_fails(AlgorithmId alg, uint64_t seed, uint64_t k, int threshold) {
    const SampledOperands ops = sample_operands(seed, k);
    const Complex64 expected = oracle_divide(ops.x(), ops.y());
    const Complex64 got = divide(alg, ops.x(), ops.y());
    if (complex_accuracy(got, expected).min_bits < threshold) return true;
    return non_finite(got) && !non_finite(expected);
}

void check_mc_args(uint64_t n, int threshold) {
    if (n < 1) throw std::invalid_argument("trial count must be >= 1");
    if (threshold < 1 || threshold > 53)
        throw std::invalid_argument("fail threshold must be in [1,53]");
}

}  // namespace

FailureEstimate estimate_failure_serial(AlgorithmId alg, uint64_t n,
                                        uint64_t seed,
                                        int fail_threshold_bits) {
    check_mc_args(n, fail_threshold_bits);
    uint64_t t = 0;
    for (uint64_t k = 0; k < n; ++k)
        if (trial_fails(alg, seed, k, fail_threshold_bits)) ++t;
    return make_estimate(alg, n, t, fail_threshold_bits, seed);
}

FailureEstimate estimate_failure(AlgorithmId alg, uint64_t n, uint64_t seed,
                                 int fail_threshold_bits, int jobs) {
    if (jobs == 1) return estimate_failure_serial(alg, n, seed, fail_threshold_bits);
    check_mc_args(n, fail_threshold_bits);

    uint64_t t = 0;
    const auto count = static_cast<int64_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : t) \
    num_threads(jobs > 0 ? jobs : omp_get_max_threads())
    for (int64_t k = 0; k < count; ++k)
        if (trial_fails(alg, seed, static_cast<uint64_t>(k),
                        fail_threshold_bits))
            ++t;
    return make_estimate(alg, n, t, fail_threshold_bits, seed);
}

std::vector<FailureEstimate> estimate_failure_matrix(
    const std::vector<AlgorithmId>& algorithms, uint64_t n, uint64_t seed,
    int fail_threshold_bits, int jobs) {
    check_mc_args(n, fail_threshold_bits);
    const size_t m = algorithms.size();
    std::vector<uint64_t> totals(m, 0);
    const auto count = static_cast<int64_t>(n);

#pragma omp parallel num_threads(jobs > 0 ? jobs : omp_get_max_threads()) \
    if (jobs != 1)
    {
        std::vector<uint64_t> local(m, 0);
#pragma omp for schedule(static)
        for (int64_t k = 0; k < count; ++k) {
            const SampledOperands ops =
                sample_operands(seed, static_cast<uint64_t>(k));
            const Complex64 expected = oracle_divide(ops.x(), ops.y());
            const bool expected_finite = !non_finite(expected);
            for (size_t i = 0; i < m; ++i) {
                const Complex64 got = divide(algorithms[i], ops.x(), ops.y());
                if (complex_accuracy(got, expected).min_bits <
                        fail_threshold_bits ||
                    (non_finite(got) && expected_finite))
                    ++local[i];
            }
        }
#pragma omp critical
        for (size_t i = 0; i < m; ++i) totals[i] += local[i];
    }

    std::vector<FailureEstimate> out;
    out.reserve(m);
    for (size_t i = 0; i < m; ++i)
        out.push_back(make_estimate(algorithms[i], n, totals[i],
                                    fail_threshold_bits, seed));
    return out;
}

std::pair<FailureEstimate, FailureEstimate> estimate_robust_quality(
    uint64_t n, uint64_t seed, int jobs) {
    check_mc_args(n, 52);
    uint64_t t52 = 0, t53 = 0;
    const auto count = static_cast<int64_t>(n);

#pragma omp parallel for schedule(static) reduction(+ : t52, t53) \
    num_threads(jobs > 0 ? jobs : omp_get_max_threads()) if (jobs != 1)
    for (int64_t k = 0; k < count; ++k) {
        const SampledOperands ops =
            sample_operands(seed, static_cast<uint64_t>(k));
        const Complex64 expected = oracle_divide(ops.x(), ops.y());
        const Complex64 got = robust_divide(ops.x(), ops.y());
        const int bits = complex_accuracy(got, expected).min_bits;
        const bool spurious = non_finite(got) && !non_finite(expected);
        if (bits < 52 || spurious) ++t52;
        if (bits < 53 || spurious) ++t53;
    }

    return {make_estimate(AlgorithmId::robust, n, t52, 52, seed),
            make_estimate(AlgorithmId::robust, n, t53, 53, seed)};
}

// --- proposition 1 -----------------------------------------------------------

namespace {

// Exact test of b*d < alpha*c over the integers.
bool exact_conclusion_holds(double b, double c, double d) {
    const ExactRational lhs =
        ExactRational::from_double(b) * ExactRational::from_double(d);
    const ExactRational rhs =
        ExactRational::from_double(kAlpha) * ExactRational::from_double(c);
    return lhs < rhs;
}

struct Prop1Sample {
    double b = 0, c = 0, d = 0;
    bool valid = false;
};

// Draws |b|,|c|,|d| in [alpha,Omega] with |d| <= |c| and the b/c and d/c
// exponent gaps concentrated around the underflow threshold at 1075.
// Even draws use pure powers of two, odd draws random significands; signs
// are randomized (the proposition is applied to the magnitudes).
Prop1Sample draw_prop1(uint64_t seed, uint64_t k) {
    const uint64_t base = k * 6;
    const auto word = [&](uint64_t j) { return counter_rng(seed, base + j); };
    const auto bounded = [&](uint64_t j, uint32_t n) {
        return static_cast<int>(
            (static_cast<unsigned __int128>(word(j)) * n) >> 64);
    };

    const int gap_d = 1070 + bounded(0, 40);  // n_c - n_d
    const int gap_b = 1070 + bounded(1, 40);  // n_c - n_b
    const int gap = gap_d > gap_b ? gap_d : gap_b;
    const int min_ec = gap - 1074;
    if (min_ec > 1023) return {};
    const int ec =
        min_ec + bounded(2, static_cast<uint32_t>(1023 - min_ec + 1));

    const uint64_t w = word(3);
    const bool powers_only = (k & 1) == 0;
    const auto make = [&](int e, uint64_t frac_word, bool negative) {
        double v;
        if (powers_only) {
            v = std::ldexp(1.0, e);
        } else {
            const double m =
                1.0 + static_cast<double>(frac_word >> 12) * 0x1p-52;
            v = std::ldexp(m, e);  // ldexp rounds subnormal results
        }
        return negative ? -v : v;
    };

    Prop1Sample s;
    s.c = make(ec, word(4), w & 1);
    s.d = make(ec - gap_d, word(5), w & 2);
    s.b = make(ec - gap_b, word(4) * 0x9e3779b97f4a7c15ull, w & 4);
    s.valid = std::fabs(s.b) >= kAlpha && std::fabs(s.d) >= kAlpha &&
              std::fabs(s.c) <= kOmega && std::fabs(s.d) <= std::fabs(s.c);
    return s;
}

void score_prop1(double b, double c, double d, uint64_t& hits,
                 uint64_t& bad, std::vector<Prop1Witness>* witnesses) {
    const double ab = std::fabs(b), ac = std::fabs(c), ad = std::fabs(d);
    if (ad / ac != 0.0 || ab / ac != 0.0) return;  // premise filter
    ++hits;
    if (!exact_conclusion_holds(ab, ac, ad)) {
        ++bad;
        if (witnesses && witnesses->size() < 8)
            witnesses->push_back({b, c, d});
    }
}

}  // namespace

Prop1Result check_proposition1(uint64_t samples, uint64_t seed, int jobs) {
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");

    Prop1Result res;
    res.samples = samples;
    uint64_t hits = 0, bad = 0;
    const auto count = static_cast<int64_t>(samples);

#pragma omp parallel num_threads(jobs > 0 ? jobs : omp_get_max_threads()) \
    if (jobs != 1)
    {
        uint64_t lhits = 0, lbad = 0;
        std::vector<Prop1Witness> lwit;
#pragma omp for schedule(static)
        for (int64_t k = 0; k < count; ++k) {
            const Prop1Sample s = draw_prop1(seed, static_cast<uint64_t>(k));
            if (!s.valid) continue;
            score_prop1(s.b, s.c, s.d, lhits, lbad, &lwit);
        }
#pragma omp critical
        {
            hits += lhits;
            bad += lbad;
            for (const Prop1Witness& w : lwit)
                if (res.witnesses.size() < 8) res.witnesses.push_back(w);
        }
    }

    res.premise_hits = hits;
    res.counterexamples = bad;
    return res;
}

Prop1Result proposition1_boundary_sweep() {
    Prop1Result res;
    const int exps[] = {1023, 1000, 512, 128, 53, 2, 1, 0, -1, -53, -128, -511, -1000, -1022};
    const double mantissas[] = {1.0, 1.0 + 0x1p-52, 1.5, 2.0 - 0x1p-52};

    for (int ec : exps) {
        for (double mc : mantissas) {
            const double c = std::ldexp(mc, ec);
            if (!std::isfinite(c) || c > kOmega) continue;
            // d and b start at c*2^-1075 and c*2^-1074: right at the points
            // where d/c and b/c stop rounding to zero
            for (int shift : {-1075, -1074}) {
                const double d0 = std::ldexp(c, shift);
                const double b0 = std::ldexp(c, shift);
                for (int i = -4; i <= 4; ++i) {
                    for (int j = -4; j <= 4; ++j) {
                        double d = d0, b = b0;
                        for (int s = 0; s < i; ++s) d = std::nextafter(d, kOmega);
                        for (int s = 0; s > i; --s) d = std::nextafter(d, 0.0);
                        for (int s = 0; s < j; ++s) b = std::nextafter(b, kOmega);
                        for (int s = 0; s > j; --s) b = std::nextafter(b, 0.0);
                        ++res.samples;
                        if (b < kAlpha || d < kAlpha || d > c) continue;
                        score_prop1(b, c, d, res.premise_hits,
                                    res.counterexamples, &res.witnesses);
                    }
                }
            }
        }
    }
    return res;
}

// --- throughput --------------------------------------------------------------

BenchResult run_bench(AlgorithmId alg, size_t dataset_size, int repetitions,
                      uint64_t seed) {
    if (dataset_size == 0)
        throw std::invalid_argument("bench dataset size must be >= 1");
    if (repetitions < 1)
        throw std::invalid_argument("bench repetitions must be >= 1");

    std::vector<double> a(dataset_size), b(dataset_size), c(dataset_size),
        d(dataset_size);
    for (size_t i = 0; i < dataset_size; ++i) {
        const uint64_t p = static_cast<uint64_t>(i) * 4;
        a[i] = uniform01(seed, p);
        b[i] = uniform01(seed, p + 1);
        c[i] = uniform01(seed, p + 2);
        d[i] = uniform01(seed, p + 3);
    }

    const DivideFn fn = divide_fn(alg);
    const auto one_pass = [&]() {
        const auto t0 = std::chrono::steady_clock::now();
        double sum = 0.0;
        for (size_t i = 0; i < dataset_size; ++i) {
            const Complex64 z = fn({a[i], b[i]}, {c[i], d[i]});
            sum += z.re + z.im;
        }
        const auto t1 = std::chrono::steady_clock::now();
        return std::pair<double, double>(
            std::chrono::duration<double>(t1 - t0).count(), sum);
    };

    BenchResult res;
    res.algorithm = alg;
    res.dataset_size = dataset_size;
    res.repetitions = repetitions;

    (void)one_pass();  // warm-up, untimed mean
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto [secs, sum] = one_pass();
        res.rep_seconds.push_back(secs);
        res.rep_checksums.push_back(sum);
    }
    res.checksum = res.rep_checksums.front();
    res.mean_seconds =
        std::accumulate(res.rep_seconds.begin(), res.rep_seconds.end(), 0.0) /
        repetitions;
    res.mcdps = static_cast<double>(dataset_size) / res.mean_seconds / 1e6;
    return res;
}

// --- rare robust failures -----------------------------------------------------

std::optional<RobustFailureWitness> find_robust_underflow_failure(
    uint64_t seed, uint64_t max_draws) {
    for (uint64_t k = 0; k < max_draws; ++k) {
        const uint64_t base = k * 4;
        const auto word = [&](uint64_t j) { return counter_rng(seed, base + j); };
        const auto bounded = [&](uint64_t j, uint32_t n) {
            return static_cast<int>(
                (static_cast<unsigned __int128>(word(j)) * n) >> 64);
        };

        // Aim the exact real part (a*c + b*d)/(c^2+d^2) just above alpha/2,
        // splitting it over two addends that each flush to zero on the
        // a*t + (b*t)*r evaluation path.
        const int nc = 1 + bounded(0, 2);                 // c = 2^1 or 2^2
        const int na = nc - 1075 - bounded(1, 2);         // a/c near alpha/2
        const int nb = -bounded(2, 960);                  // free magnitude
        const int nd = (2 * nc - 1076 - bounded(3, 2)) - nb;
        if (na < -1074 || nd < -1073 || nd > nc - 27) continue;

        const uint64_t w = word(1) >> 32;
        const int sa = w & 1 ? -1 : 1;
        const int sb = w & 2 ? -1 : 1;
        const int sd = sa * sb;  // keep a*c and b*d on the same side
        const Complex64 x{std::ldexp(static_cast<double>(sa), na),
                          std::ldexp(static_cast<double>(sb), nb)};
        const Complex64 y{std::ldexp(1.0, nc),
                          std::ldexp(static_cast<double>(sd), nd)};

        const Complex64 want = oracle_divide(x, y);
        if (std::fabs(want.re) != kAlpha) continue;
        const Complex64 got = robust_divide(x, y);
        if (got.re == 0.0)
            return RobustFailureWitness{x, y, want, got};
    }
    return std::nullopt;
}

}  // namespace cdiv
