// Compares the serial Monte-Carlo reference against the OpenMP kernel:
// same failure counts, wall-clock speedup.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cdiv/experiments.hpp"

using namespace cdiv;

namespace {

double timed(FailureEstimate& out, AlgorithmId alg, uint64_t n, uint64_t seed,
             int jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    out = jobs == 1 ? estimate_failure_serial(alg, n, seed)
                    : estimate_failure(alg, n, seed, 53, jobs);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    const uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const int jobs = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
    const AlgorithmId alg = AlgorithmId::robust;

    std::printf("Monte-Carlo failure estimation, %llu trials of %s, seed %llu\n",
                static_cast<unsigned long long>(n), "robust",
                static_cast<unsigned long long>(seed));
    (void)alg;

    FailureEstimate serial, parallel;
    const double ts = timed(serial, alg, n, seed, 1);
    const double tp = timed(parallel, alg, n, seed, jobs);

    std::printf("serial reference: T=%llu  %.3f s  (%.0f trials/s)\n",
                static_cast<unsigned long long>(serial.failures), ts,
                static_cast<double>(n) / ts);
    std::printf("OpenMP x%-2d:       T=%llu  %.3f s  (%.0f trials/s)\n", jobs,
                static_cast<unsigned long long>(parallel.failures), tp,
                static_cast<double>(n) / tp);
    std::printf("speedup: %.2fx\n", ts / tp);

    if (serial.failures != parallel.failures) {
        std::printf("FAIL: counts differ\n");
        return 1;
    }
    std::printf("counts identical\n");
    return 0;
}
