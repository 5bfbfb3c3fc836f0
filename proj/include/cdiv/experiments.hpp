#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cdiv/algorithms.hpp"
#include "cdiv/fpkit.hpp"

namespace cdiv {

// Monte-Carlo failure estimate with the 95% Wald interval.
struct FailureEstimate {
    AlgorithmId algorithm = AlgorithmId::naive;
    uint64_t trials = 0;    // N
    uint64_t failures = 0;  // T
    double p_hat = 0.0;     // T/N
    double variance = 0.0;  // p(1-p)/N
    double ci_low = 0.0;    // clamped to [0,1]
    double ci_high = 0.0;
    int fail_threshold_bits = 53;
    uint64_t seed = 0;
};

// A trial fails when min_bits against the oracle drops below the threshold,
// or the algorithm returns NaN/Inf where the exact quotient is finite.
// Trials are drawn with sample_operands(seed, k), k = 0..n-1, so the count
// is independent of how trials are partitioned across workers.
//
// jobs == 1 runs the serial reference path; jobs > 1 uses OpenMP;
// jobs == 0 lets OpenMP pick. The result is identical for any jobs value.
FailureEstimate estimate_failure(AlgorithmId alg, uint64_t n, uint64_t seed,
                                 int fail_threshold_bits = 53, int jobs = 1);

// Plain serial loop, kept as the reference implementation.
FailureEstimate estimate_failure_serial(AlgorithmId alg, uint64_t n,
                                        uint64_t seed,
                                        int fail_threshold_bits = 53);

// One pass over a shared operand stream scoring several algorithms; each
// returned row equals what estimate_failure would produce for that
// algorithm, but the oracle quotient is computed once per trial.
std::vector<FailureEstimate> estimate_failure_matrix(
    const std::vector<AlgorithmId>& algorithms, uint64_t n, uint64_t seed,
    int fail_threshold_bits = 53, int jobs = 1);

// Robust-division quality over one stream: failures counted at 52 bits
// (more than the last bit wrong) and at 53 bits (not bit-exact).
std::pair<FailureEstimate, FailureEstimate> estimate_robust_quality(
    uint64_t n, uint64_t seed, int jobs = 1);

// --- the underflow proposition ------------------------------------------

struct Prop1Witness {
    double b = 0, c = 0, d = 0;
};

struct Prop1Result {
    uint64_t samples = 0;       // draws attempted
    uint64_t premise_hits = 0;  // draws where both quotients flushed to zero
    uint64_t counterexamples = 0;
    std::vector<Prop1Witness> witnesses;  // at most a handful
};

// Samples (b,c,d) in [alpha,Omega] with d <= c, mixing pure powers of two
// with random-significand values and biasing the exponent gaps toward the
// underflow thresholds. For every draw where fl(d/c) == 0 and
// fl(b/c) == 0, checks the exact inequality b*d < alpha*c.
Prop1Result check_proposition1(uint64_t samples, uint64_t seed, int jobs = 1);

// Deterministic enumeration of (b,c,d) right at the d/c and b/c underflow
// boundaries (a few ulps either side).
Prop1Result proposition1_boundary_sweep();

// --- throughput ------------------------------------------------------------

struct BenchResult {
    AlgorithmId algorithm = AlgorithmId::naive;
    size_t dataset_size = 0;
    int repetitions = 0;
    double mean_seconds = 0.0;
    double mcdps = 0.0;     // millions of complex divisions per second
    double checksum = 0.0;  // sum of all result components, identical per rep
    std::vector<double> rep_seconds;
    std::vector<double> rep_checksums;
};

// Times dataset_size divisions of operands uniform in [0,1), repeated
// after one untimed warm-up pass. Generation happens before any timing.
// Throws std::invalid_argument for dataset_size == 0 or repetitions < 1.
BenchResult run_bench(AlgorithmId alg, size_t dataset_size, int repetitions,
                      uint64_t seed);

// --- rare robust failures ---------------------------------------------------

struct RobustFailureWitness {
    Complex64 x;
    Complex64 y;
    Complex64 oracle_z;
    Complex64 robust_z;
};

// Directed random search for operands whose exact real part rounds to the
// smallest subnormal while the robust division returns zero.
std::optional<RobustFailureWitness> find_robust_underflow_failure(
    uint64_t seed, uint64_t max_draws);

}  // namespace cdiv
