#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "cdiv/fpkit.hpp"

namespace cdiv {

// The eight complex-division algorithms under test. All of them run
// strictly in binary64 with non-stop IEEE semantics: out-of-range
// intermediates become Inf/NaN and flow through.
enum class AlgorithmId {
    naive,
    smith,
    stewart,
    annex_g,
    li,
    priest,
    improved,
    robust,
};

constexpr std::array<AlgorithmId, 8> kAllAlgorithms = {
    AlgorithmId::naive,   AlgorithmId::smith,  AlgorithmId::stewart,
    AlgorithmId::annex_g, AlgorithmId::li,     AlgorithmId::priest,
    AlgorithmId::improved, AlgorithmId::robust,
};

// Stable identifiers used in the CLI, CSV and data files.
std::string_view algorithm_name(AlgorithmId id);
std::optional<AlgorithmId> algorithm_from_name(std::string_view name);

Complex64 naive_divide(Complex64 x, Complex64 y);
Complex64 smith_divide(Complex64 x, Complex64 y);
Complex64 stewart_divide(Complex64 x, Complex64 y);
Complex64 annex_g_divide(Complex64 x, Complex64 y);
Complex64 li_divide(Complex64 x, Complex64 y);
Complex64 priest_divide(Complex64 x, Complex64 y);
Complex64 improved_divide(Complex64 x, Complex64 y);
Complex64 robust_divide(Complex64 x, Complex64 y);

Complex64 divide(AlgorithmId alg, Complex64 x, Complex64 y);

using DivideFn = Complex64 (*)(Complex64, Complex64);
DivideFn divide_fn(AlgorithmId alg);

// Intermediates of Smith's kernel, for failure-trace tests.
struct SmithTrace {
    double r = 0;
    double den = 0;
    Complex64 z;
    bool swapped = false;  // true when the |d| > |c| branch ran
};
SmithTrace smith_divide_traced(Complex64 x, Complex64 y);

// Pre/post scaling state of the robust division: s accumulates the exact
// power-of-two back-scaling factor, be is the upscale constant B/eps^2
// with B = 2.
struct ScaleState {
    double s = 1.0;
    double be = 0x1p105;
};

struct RobustTrace {
    ScaleState scale;
    Complex64 scaled_x;
    Complex64 scaled_y;
    Complex64 internal;  // result before the final multiply by s
    Complex64 z;
};
RobustTrace robust_divide_traced(Complex64 x, Complex64 y);

}  // namespace cdiv
