#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cdiv/algorithms.hpp"
#include "cdiv/fpkit.hpp"

namespace cdiv {

// One difficult division: operands, the correctly rounded quotient, and a
// short description of what goes wrong. The expected value always equals
// oracle_divide(x, y) bit for bit; loaders re-verify that and fail loudly.
struct DivisionCase {
    int id = 0;
    Complex64 x;
    Complex64 y;
    Complex64 expected;
    std::string note;
};

// Expected min-bits of every algorithm on one corpus case.
struct GoldenRow {
    int case_id = 0;
    std::array<int, 8> bits{};  // indexed by kAllAlgorithms order

    int bits_for(AlgorithmId alg) const {
        return bits[static_cast<size_t>(alg)];
    }
};

// The ten-case builtin corpus, oracle-verified on first use.
const std::vector<DivisionCase>& builtin_corpus();

// The builtin golden accuracy table (10 cases x 8 algorithms).
const std::vector<GoldenRow>& builtin_golden();

// File format: one case per line,
//   id; x_re; x_im; y_re; y_im; z_re; z_im; note
// with hex-float fields. '#' comments and blank lines are skipped.
std::vector<DivisionCase> load_corpus(const std::string& path);
std::vector<DivisionCase> parse_corpus(std::istream& in, const std::string& name);
void save_corpus(const std::vector<DivisionCase>& cases, const std::string& path);

// Golden file format: one cell per line, "case_id; algo; bits".
// Loading checks the table is total over cases x algorithms.
std::vector<GoldenRow> load_golden(const std::string& path,
                                   const std::vector<DivisionCase>& cases);
void save_golden(const std::vector<GoldenRow>& rows, const std::string& path);

struct GoldenCell {
    int case_id = 0;
    AlgorithmId algorithm = AlgorithmId::naive;
    int bits = 0;         // measured
    int golden_bits = 0;  // expected
    bool pass = false;
};

// Runs every requested algorithm over every case, scores it against the
// oracle-exact expected value and compares with the golden table.
std::vector<GoldenCell> run_golden(const std::vector<DivisionCase>& cases,
                                   const std::vector<GoldenRow>& golden,
                                   const std::vector<AlgorithmId>& algorithms);

}  // namespace cdiv
