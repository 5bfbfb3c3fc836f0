#include "cdiv/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cdiv/oracle.hpp"

namespace cdiv {

namespace {

std::vector<DivisionCase> make_builtin_corpus() {
    // Expected values are frozen; the oracle check below re-derives them.
    std::vector<DivisionCase> cases = {
        {1,
         {1.0, 1.0},
         {1.0, 0x1p1023},
         {0x1p-1023, -0x1p-1023},
         "c*c+d*d overflows"},
        {2,
         {1.0, 1.0},
         {0x1p-1023, 0x1p-1023},
         {0x1p1023, 0.0},
         "c*c+d*d underflows to zero"},
        {3,
         {0x1p1023, 0x1p-1023},
         {0x1p677, 0x1p-677},
         {0x1p346, -0x1p-1008},
         "r = d/c underflows, a*r lost"},
        {4,
         {0x1p1023, 0x1p1023},
         {1.0, 1.0},
         {0x1p1023, 0.0},
         "a + b*r overflows, result near the largest normal"},
        {5,
         {0x1p1020, 0x1p-844},
         {0x1p656, 0x1p-780},
         {0x1p364, -0x1p-1072},
         "imaginary part lands near the underflow threshold"},
        {6,
         {0x1p-71, 0x1p1021},
         {0x1p1001, 0x1p-323},
         {0x1p-1072, 0x1p20},
         "real part lands near the underflow threshold"},
        {7,
         {0x1p-347, 0x1p-54},
         {0x1p-1037, 0x1p-1058},
         {0x1p962 - 0x1p920, 0x1p983 - 0x1p941},
         "subnormal denominator, 1/den overflows"},
        {8,
         {0x1p-1074, 0x1p-1074},
         {0x1p-1073, 0x1p-1074},
         {0.6, 0.2},
         "every operand is subnormal"},
        {9,
         {0x1p1015, 0x1p-989},
         {0x1p1023, 0x1p1023},
         {0x1p-9, -0x1p-9},
         "den = c + d*r overflows"},
        {10,
         {0x1p-622, 0x1p-1071},
         {0x1p-343, 0x1p-798},
         {0x1p-279, 0x1.f8p-729},
         "a*r underflows, a few bits survive"},
    };

    for (const DivisionCase& dc : cases) {
        const Complex64 z = oracle_divide(dc.x, dc.y);
        if (!same_bits(z, dc.expected))
            throw std::logic_error("builtin corpus: case " +
                                   std::to_string(dc.id) +
                                   " disagrees with the oracle");
    }
    return cases;
}

std::vector<GoldenRow> make_builtin_golden() {
    // Column order: naive, smith, stewart, annex_g, li, priest, improved,
    // robust.
    return {
        {1, {0, 53, 53, 53, 53, 53, 53, 53}},
        {2, {0, 53, 53, 53, 53, 53, 53, 53}},
        {3, {0, 0, 53, 0, 0, 0, 53, 53}},
        {4, {0, 0, 0, 0, 53, 53, 0, 53}},
        {5, {0, 0, 53, 0, 0, 0, 53, 53}},
        {6, {0, 53, 53, 53, 0, 53, 53, 53}},
        {7, {0, 41, 0, 53, 53, 53, 0, 53}},
        {8, {0, 0, 0, 0, 53, 52, 0, 52}},
        {9, {0, 0, 0, 53, 53, 53, 0, 53}},
        {10, {0, 5, 5, 5, 5, 53, 5, 53}},
    };
}

std::string trim(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ';') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

[[noreturn]] void parse_fail(const std::string& name, int line,
                             const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

const std::vector<DivisionCase>& builtin_corpus() {
    static const std::vector<DivisionCase> corpus = make_builtin_corpus();
    return corpus;
}

const std::vector<GoldenRow>& builtin_golden() {
    static const std::vector<GoldenRow> golden = make_builtin_golden();
    return golden;
}

std::vector<DivisionCase> parse_corpus(std::istream& in,
                                       const std::string& name) {
    std::vector<DivisionCase> cases;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;

        const std::vector<std::string> f = split_fields(body);
        if (f.size() != 8)
            parse_fail(name, lineno,
                       "expected 8 ';'-separated fields, got " +
                           std::to_string(f.size()));

        DivisionCase dc;
        try {
            dc.id = std::stoi(f[0]);
        } catch (const std::exception&) {
            parse_fail(name, lineno, "bad case id '" + f[0] + "'");
        }
        double v[6];
        for (int i = 0; i < 6; ++i) {
            try {
                v[i] = parse_hexfloat(f[i + 1]);
            } catch (const std::invalid_argument& err) {
                parse_fail(name, lineno, err.what());
            }
        }
        dc.x = {v[0], v[1]};
        dc.y = {v[2], v[3]};
        dc.expected = {v[4], v[5]};
        dc.note = f[7];

        const Complex64 z = oracle_divide(dc.x, dc.y);
        if (!same_bits(z, dc.expected))
            parse_fail(name, lineno,
                       "case " + std::to_string(dc.id) +
                           ": stored quotient disagrees with the oracle (" +
                           format_hexfloat(z.re) + ", " + format_hexfloat(z.im) +
                           ")");
        cases.push_back(std::move(dc));
    }
    return cases;
}

std::vector<DivisionCase> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
    return parse_corpus(in, path);
}

void save_corpus(const std::vector<DivisionCase>& cases,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file '" + path + "'");
    out << "# id; x_re; x_im; y_re; y_im; z_re; z_im; note\n";
    for (const DivisionCase& dc : cases) {
        out << dc.id << "; " << format_hexfloat(dc.x.re) << "; "
            << format_hexfloat(dc.x.im) << "; " << format_hexfloat(dc.y.re)
            << "; " << format_hexfloat(dc.y.im) << "; "
            << format_hexfloat(dc.expected.re) << "; "
            << format_hexfloat(dc.expected.im) << "; " << dc.note << "\n";
    }
    if (!out.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<GoldenRow> load_golden(const std::string& path,
                                   const std::vector<DivisionCase>& cases) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file '" + path + "'");

    std::vector<GoldenRow> rows;
    auto row_for = [&rows](int case_id) -> GoldenRow& {
        for (GoldenRow& r : rows)
            if (r.case_id == case_id) return r;
        rows.push_back(GoldenRow{case_id, {}});
        rows.back().bits.fill(-1);
        return rows.back();
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        const std::vector<std::string> f = split_fields(body);
        if (f.size() != 3)
            parse_fail(path, lineno, "expected 'case_id; algo; bits'");
        int case_id = 0, bits = -1;
        try {
            case_id = std::stoi(f[0]);
            bits = std::stoi(f[2]);
        } catch (const std::exception&) {
            parse_fail(path, lineno, "bad integer field");
        }
        const auto alg = algorithm_from_name(f[1]);
        if (!alg) parse_fail(path, lineno, "unknown algorithm '" + f[1] + "'");
        if (bits < 0 || bits > 53)
            parse_fail(path, lineno, "bits out of range [0,53]");
        row_for(case_id).bits[static_cast<size_t>(*alg)] = bits;
    }

    // the table must be total: every case, every algorithm
    for (const DivisionCase& dc : cases) {
        const GoldenRow* found = nullptr;
        for (const GoldenRow& r : rows)
            if (r.case_id == dc.id) found = &r;
        if (!found)
            throw std::runtime_error(path + ": no golden rows for case " +
                                     std::to_string(dc.id));
        for (AlgorithmId alg : kAllAlgorithms)
            if (found->bits_for(alg) < 0)
                throw std::runtime_error(
                    path + ": case " + std::to_string(dc.id) +
                    " is missing algorithm '" +
                    std::string(algorithm_name(alg)) + "'");
    }
    return rows;
}

void save_golden(const std::vector<GoldenRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write golden file '" + path + "'");
    out << "# case_id; algo; bits\n";
    for (const GoldenRow& r : rows)
        for (AlgorithmId alg : kAllAlgorithms)
            out << r.case_id << "; " << algorithm_name(alg) << "; "
                << r.bits_for(alg) << "\n";
    if (!out.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<GoldenCell> run_golden(const std::vector<DivisionCase>& cases,
                                   const std::vector<GoldenRow>& golden,
                                   const std::vector<AlgorithmId>& algorithms) {
    std::vector<GoldenCell> out;
    out.reserve(cases.size() * algorithms.size());
    for (const DivisionCase& dc : cases) {
        const GoldenRow* row = nullptr;
        for (const GoldenRow& r : golden)
            if (r.case_id == dc.id) row = &r;
        if (!row)
            throw std::runtime_error("golden table has no rows for case " +
                                     std::to_string(dc.id));
        for (AlgorithmId alg : algorithms) {
            const Complex64 z = divide(alg, dc.x, dc.y);
            const AccuracyResult acc = complex_accuracy(z, dc.expected);
            GoldenCell cell;
            cell.case_id = dc.id;
            cell.algorithm = alg;
            cell.bits = acc.min_bits;
            cell.golden_bits = row->bits_for(alg);
            cell.pass = cell.bits == cell.golden_bits;
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace cdiv
