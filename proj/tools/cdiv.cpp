#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cdiv/corpus.hpp"
#include "cdiv/experiments.hpp"
#include "cdiv/oracle.hpp"

using nlohmann::json;

namespace {

using namespace cdiv;

enum class Format { table, csv, json_fmt };

Format parse_format(const std::string& s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json_fmt;
    throw CLI::ValidationError("--format", "expected table, csv or json");
}

// Operands are "re,im" pairs of hex-float literals; plain decimal is
// accepted too but gets flagged when the text is not exactly a binary64.
double parse_component(const std::string& text) {
    try {
        return parse_hexfloat(text);
    } catch (const std::invalid_argument&) {
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw std::invalid_argument("bad numeric literal: '" + text + "'");
    const ExactRational exact = ExactRational::from_decimal(text);
    if (exact != ExactRational::from_double(v))
        std::cerr << "warning: '" << text
                  << "' is not exactly representable; using "
                  << format_hexfloat(v) << "\n";
    return v;
}

Complex64 parse_pair(const std::string& text) {
    const size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected 're,im', got '" + text + "'");
    return {parse_component(text.substr(0, comma)),
            parse_component(text.substr(comma + 1))};
}

std::vector<AlgorithmId> parse_algos(const std::string& text) {
    std::vector<AlgorithmId> out;
    if (text == "all") {
        out.assign(kAllAlgorithms.begin(), kAllAlgorithms.end());
        return out;
    }
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string name =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const auto id = algorithm_from_name(name);
        if (!id) throw std::invalid_argument("unknown algorithm '" + name + "'");
        out.push_back(*id);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("no algorithms selected");
    return out;
}

std::string hex(double v) { return format_hexfloat(v); }

// --- divide -----------------------------------------------------------------

int run_divide(const std::string& algo, const std::string& xs,
               const std::string& ys, Format fmt, bool with_oracle) {
    const auto alg = algorithm_from_name(algo);
    if (!alg) throw std::invalid_argument("unknown algorithm '" + algo + "'");
    const Complex64 x = parse_pair(xs);
    const Complex64 y = parse_pair(ys);
    const Complex64 z = divide(*alg, x, y);

    Complex64 oz{};
    int min_bits = -1;
    if (with_oracle) {
        oz = oracle_divide(x, y);
        min_bits = complex_accuracy(z, oz).min_bits;
    }

    switch (fmt) {
        case Format::table:
            std::cout << hex(z.re) << "," << hex(z.im) << "\n";
            if (with_oracle) {
                std::cout << "oracle: " << hex(oz.re) << "," << hex(oz.im)
                          << "\n";
                std::cout << "min_bits: " << min_bits << "\n";
            }
            break;
        case Format::csv:
            std::cout << "algo,z_re,z_im";
            if (with_oracle) std::cout << ",oracle_re,oracle_im,min_bits";
            std::cout << "\n" << algo << "," << hex(z.re) << "," << hex(z.im);
            if (with_oracle)
                std::cout << "," << hex(oz.re) << "," << hex(oz.im) << ","
                          << min_bits;
            std::cout << "\n";
            break;
        case Format::json_fmt: {
            json j{{"algo", algo}, {"z_re", hex(z.re)}, {"z_im", hex(z.im)}};
            if (with_oracle) {
                j["oracle_re"] = hex(oz.re);
                j["oracle_im"] = hex(oz.im);
                j["min_bits"] = min_bits;
            }
            std::cout << j.dump() << "\n";
            break;
        }
    }
    return 0;
}

// --- cases --------------------------------------------------------------------

int run_cases(const std::string& algos, const std::string& corpus_path,
              const std::string& golden_path, Format fmt) {
    const std::vector<AlgorithmId> algs = parse_algos(algos);

    std::vector<DivisionCase> cases;
    std::string corpus_from = corpus_path;
    if (corpus_from.empty()) {
        if (const char* env = std::getenv("CDIV_CORPUS")) corpus_from = env;
    }
    cases = corpus_from.empty() ? builtin_corpus() : load_corpus(corpus_from);

    const std::vector<GoldenRow> golden = golden_path.empty()
                                              ? builtin_golden()
                                              : load_golden(golden_path, cases);

    const std::vector<GoldenCell> cells = run_golden(cases, golden, algs);

    switch (fmt) {
        case Format::table: {
            std::printf("%-5s", "case");
            for (AlgorithmId alg : algs)
                std::printf(" %9s", std::string(algorithm_name(alg)).c_str());
            std::printf("\n");
            for (const DivisionCase& dc : cases) {
                std::printf("%-5d", dc.id);
                for (const GoldenCell& cell : cells)
                    if (cell.case_id == dc.id)
                        std::printf(" %7d%s", cell.bits, cell.pass ? "  " : " *");
                std::printf("\n");
            }
            break;
        }
        case Format::csv:
            std::cout << "case_id,algo,bits,golden_bits,pass\n";
            for (const GoldenCell& c : cells)
                std::cout << c.case_id << "," << algorithm_name(c.algorithm)
                          << "," << c.bits << "," << c.golden_bits << ","
                          << (c.pass ? 1 : 0) << "\n";
            break;
        case Format::json_fmt: {
            json arr = json::array();
            for (const GoldenCell& c : cells)
                arr.push_back({{"case_id", c.case_id},
                               {"algo", algorithm_name(c.algorithm)},
                               {"bits", c.bits},
                               {"golden_bits", c.golden_bits},
                               {"pass", c.pass}});
            std::cout << arr.dump() << "\n";
            break;
        }
    }

    int mismatches = 0;
    for (const GoldenCell& c : cells) {
        if (c.pass) continue;
        ++mismatches;
        std::cerr << "mismatch: case " << c.case_id << " "
                  << algorithm_name(c.algorithm) << " got " << c.bits
                  << " bits, golden " << c.golden_bits << "\n";
    }
    return mismatches == 0 ? 0 : 1;
}

// --- montecarlo ----------------------------------------------------------------

void print_estimates(const std::vector<FailureEstimate>& rows, Format fmt) {
    switch (fmt) {
        case Format::table:
            std::printf("%-10s %9s %9s %12s %26s\n", "algo", "N", "T", "p_hat",
                        "95% CI");
            for (const FailureEstimate& r : rows)
                std::printf("%-10s %9llu %9llu %12.4e [%.4e, %.4e]\n",
                            std::string(algorithm_name(r.algorithm)).c_str(),
                            static_cast<unsigned long long>(r.trials),
                            static_cast<unsigned long long>(r.failures), r.p_hat,
                            r.ci_low, r.ci_high);
            break;
        case Format::csv:
            std::cout << "algo,N,T,p_hat,ci_low,ci_high,threshold_bits,seed\n";
            for (const FailureEstimate& r : rows)
                std::cout << algorithm_name(r.algorithm) << "," << r.trials
                          << "," << r.failures << "," << hex(r.p_hat) << ","
                          << hex(r.ci_low) << "," << hex(r.ci_high) << ","
                          << r.fail_threshold_bits << "," << r.seed << "\n";
            break;
        case Format::json_fmt: {
            json arr = json::array();
            for (const FailureEstimate& r : rows)
                arr.push_back({{"algo", algorithm_name(r.algorithm)},
                               {"N", r.trials},
                               {"T", r.failures},
                               {"p_hat", hex(r.p_hat)},
                               {"ci_low", hex(r.ci_low)},
                               {"ci_high", hex(r.ci_high)},
                               {"threshold_bits", r.fail_threshold_bits},
                               {"seed", r.seed}});
            std::cout << arr.dump() << "\n";
            break;
        }
    }
}

int run_montecarlo(const std::string& algos, uint64_t trials, uint64_t seed,
                   int fail_bits, int jobs, Format fmt) {
    const std::vector<AlgorithmId> algs = parse_algos(algos);
    const std::vector<FailureEstimate> rows =
        estimate_failure_matrix(algs, trials, seed, fail_bits, jobs);
    print_estimates(rows, fmt);
    return 0;
}

// --- prop1 -----------------------------------------------------------------------

int run_prop1(uint64_t samples, uint64_t seed, int jobs) {
    const Prop1Result random = check_proposition1(samples, seed, jobs);
    const Prop1Result sweep = proposition1_boundary_sweep();
    std::printf("random sweep:   %llu samples, %llu premise hits, %llu counterexamples\n",
                static_cast<unsigned long long>(random.samples),
                static_cast<unsigned long long>(random.premise_hits),
                static_cast<unsigned long long>(random.counterexamples));
    std::printf("boundary sweep: %llu samples, %llu premise hits, %llu counterexamples\n",
                static_cast<unsigned long long>(sweep.samples),
                static_cast<unsigned long long>(sweep.premise_hits),
                static_cast<unsigned long long>(sweep.counterexamples));
    for (const Prop1Result* r : {&random, &sweep})
        for (const Prop1Witness& w : r->witnesses)
            std::printf("counterexample: b=%s c=%s d=%s\n", hex(w.b).c_str(),
                        hex(w.c).c_str(), hex(w.d).c_str());
    return random.counterexamples + sweep.counterexamples == 0 ? 0 : 1;
}

// --- bench ------------------------------------------------------------------------

int run_bench_cmd(const std::string& algos, size_t size, int reps,
                  uint64_t seed, Format fmt) {
    const std::vector<AlgorithmId> algs = parse_algos(algos);
    std::vector<BenchResult> rows;
    rows.reserve(algs.size());
    for (AlgorithmId alg : algs) rows.push_back(run_bench(alg, size, reps, seed));

    switch (fmt) {
        case Format::table:
            std::printf("%-10s %9s %5s %14s %8s %22s\n", "algo", "size", "reps",
                        "mean_seconds", "MCDPS", "checksum");
            for (const BenchResult& r : rows)
                std::printf("%-10s %9zu %5d %14.6f %8.1f %22.15g\n",
                            std::string(algorithm_name(r.algorithm)).c_str(),
                            r.dataset_size, r.repetitions, r.mean_seconds,
                            r.mcdps, r.checksum);
            break;
        case Format::csv:
            std::cout << "algo,dataset_size,reps,mean_seconds,mcdps,checksum\n";
            for (const BenchResult& r : rows)
                std::cout << algorithm_name(r.algorithm) << "," << r.dataset_size
                          << "," << r.repetitions << "," << hex(r.mean_seconds)
                          << "," << hex(r.mcdps) << "," << hex(r.checksum)
                          << "\n";
            break;
        case Format::json_fmt: {
            json arr = json::array();
            for (const BenchResult& r : rows)
                arr.push_back({{"algo", algorithm_name(r.algorithm)},
                               {"dataset_size", r.dataset_size},
                               {"reps", r.repetitions},
                               {"mean_seconds", hex(r.mean_seconds)},
                               {"mcdps", hex(r.mcdps)},
                               {"checksum", hex(r.checksum)}});
            std::cout << arr.dump() << "\n";
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex-division robustness lab"};
    app.require_subcommand(1);

    std::string algo = "improved", algos = "all", xs, ys;
    std::string corpus_path, golden_path, format = "table";
    bool with_oracle = false;
    uint64_t trials = 100000, seed = 1, samples = 1000000;
    int fail_bits = 53, jobs = 1, reps = 10;
    size_t size = 1574802;

    CLI::App* divide = app.add_subcommand("divide", "run one division");
    divide->add_option("--algo", algo, "algorithm id")->required();
    divide->add_option("--x", xs, "numerator re,im")->required();
    divide->add_option("--y", ys, "denominator re,im")->required();
    divide->add_option("--format", format, "table|csv|json");
    divide->add_flag("--oracle", with_oracle,
                     "also print the correctly rounded quotient and min_bits");

    CLI::App* cases = app.add_subcommand(
        "cases", "score algorithms on the difficult corpus against golden");
    cases->add_option("--algos", algos, "comma list or 'all'");
    cases->add_option("--corpus", corpus_path,
                      "corpus file (default: $CDIV_CORPUS or builtin)");
    cases->add_option("--golden", golden_path, "golden file (default: builtin)");
    cases->add_option("--format", format, "table|csv|json");

    CLI::App* mc = app.add_subcommand(
        "montecarlo", "failure probability over random power-of-two operands");
    mc->add_option("--algo", algos, "comma list or 'all'");
    mc->add_option("--trials", trials, "number of trials");
    mc->add_option("--seed", seed, "stream seed");
    mc->add_option("--fail-bits", fail_bits, "failure threshold in [1,53]");
    mc->add_option("--jobs", jobs, "worker threads (result is independent)");
    mc->add_option("--format", format, "table|csv|json");

    CLI::App* prop1 = app.add_subcommand(
        "prop1", "sweep the three-factor underflow proposition");
    prop1->add_option("--samples", samples, "random draws");
    prop1->add_option("--seed", seed, "stream seed");
    prop1->add_option("--jobs", jobs, "worker threads");

    CLI::App* bench = app.add_subcommand("bench", "throughput in MCDPS");
    bench->add_option("--algos", algos, "comma list or 'all'");
    bench->add_option("--size", size, "dataset size");
    bench->add_option("--reps", reps, "timed repetitions");
    bench->add_option("--seed", seed, "dataset seed");
    bench->add_option("--format", format, "table|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Format fmt = parse_format(format);
        if (divide->parsed())
            return run_divide(algo, xs, ys, fmt, with_oracle);
        if (cases->parsed())
            return run_cases(algos, corpus_path, golden_path, fmt);
        if (mc->parsed()) {
            if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
            if (fail_bits < 1 || fail_bits > 53)
                throw std::invalid_argument("--fail-bits must be in [1,53]");
            return run_montecarlo(algos, trials, seed, fail_bits, jobs, fmt);
        }
        if (prop1->parsed()) {
            if (samples < 1)
                throw std::invalid_argument("--samples must be >= 1");
            return run_prop1(samples, seed, jobs);
        }
        if (bench->parsed()) {
            if (size < 1) throw std::invalid_argument("--size must be >= 1");
            if (reps < 1) throw std::invalid_argument("--reps must be >= 1");
            return run_bench_cmd(algos, size, reps, seed, fmt);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
