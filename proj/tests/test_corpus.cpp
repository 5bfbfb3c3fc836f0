#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdiv/corpus.hpp"
#include "cdiv/oracle.hpp"

using namespace cdiv;

namespace {

std::string decimal(double v, const char* spec) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string temp_path(const char* stem) {
    return std::string("./") + stem + ".tmp";
}

}  // namespace

TEST_CASE("builtin corpus holds the ten cases, oracle-verified") {
    const auto& cases = builtin_corpus();
    REQUIRE(cases.size() == 10);
    for (size_t i = 0; i < cases.size(); ++i) {
        CHECK(cases[i].id == static_cast<int>(i) + 1);
        CHECK(same_bits(oracle_divide(cases[i].x, cases[i].y),
                        cases[i].expected));
    }

    const DivisionCase& c3 = cases[2];
    CHECK(c3.x.re == 0x1p1023);
    CHECK(c3.x.im == 0x1p-1023);
    CHECK(c3.y.re == 0x1p677);
    CHECK(c3.y.im == 0x1p-677);
    CHECK(same_bits(c3.expected, Complex64{0x1p346, -0x1p-1008}));

    const DivisionCase& c9 = cases[8];
    CHECK(c9.expected.re == 0.001953125);
    CHECK(c9.expected.im == -0.001953125);
}

TEST_CASE("corpus quotients print the documented decimal digits") {
    const auto& cases = builtin_corpus();
    CHECK(decimal(cases[6].expected.re, "%.18e") == "3.898125604559113300e+289");
    CHECK(decimal(cases[6].expected.im, "%.18e") == "8.174961907852353577e+295");
    CHECK(decimal(cases[8].expected.re, "%.9f") == "0.001953125");
    CHECK(decimal(cases[9].expected.re, "%.17e") == "1.02951151789360578e-84");
    CHECK(decimal(cases[9].expected.im, "%.17e") == "6.97145987515076231e-220");
}

TEST_CASE("golden table is total and matches measurements") {
    const auto& golden = builtin_golden();
    REQUIRE(golden.size() == 10);
    for (const GoldenRow& row : golden)
        for (AlgorithmId alg : kAllAlgorithms) {
            CHECK(row.bits_for(alg) >= 0);
            CHECK(row.bits_for(alg) <= 53);
        }

    const auto cells =
        run_golden(builtin_corpus(), builtin_golden(),
                   {kAllAlgorithms.begin(), kAllAlgorithms.end()});
    for (const GoldenCell& cell : cells) CHECK(cell.pass);
}

TEST_CASE("corpus save/load round-trips bit-exactly") {
    const std::string path = temp_path("corpus_roundtrip");
    save_corpus(builtin_corpus(), path);
    const auto loaded = load_corpus(path);
    REQUIRE(loaded.size() == builtin_corpus().size());
    for (size_t i = 0; i < loaded.size(); ++i) {
        const DivisionCase& a = loaded[i];
        const DivisionCase& b = builtin_corpus()[i];
        CHECK(a.id == b.id);
        CHECK(same_bits(a.x, b.x));
        CHECK(same_bits(a.y, b.y));
        CHECK(same_bits(a.expected, b.expected));
        CHECK(a.note == b.note);
    }
    std::remove(path.c_str());
}

TEST_CASE("golden save/load round-trips") {
    const std::string path = temp_path("golden_roundtrip");
    save_golden(builtin_golden(), path);
    const auto loaded = load_golden(path, builtin_corpus());
    REQUIRE(loaded.size() == builtin_golden().size());
    for (const GoldenRow& row : builtin_golden()) {
        const GoldenRow* got = nullptr;
        for (const GoldenRow& r : loaded)
            if (r.case_id == row.case_id) got = &r;
        REQUIRE(got != nullptr);
        for (AlgorithmId alg : kAllAlgorithms)
            CHECK(got->bits_for(alg) == row.bits_for(alg));
    }
    std::remove(path.c_str());
}

TEST_CASE("shipped data files match the builtin tables") {
    const std::string dir = CDIV_DATA_DIR;
    const auto cases = load_corpus(dir + "/corpus.txt");
    REQUIRE(cases.size() == builtin_corpus().size());
    for (size_t i = 0; i < cases.size(); ++i) {
        CHECK(same_bits(cases[i].x, builtin_corpus()[i].x));
        CHECK(same_bits(cases[i].y, builtin_corpus()[i].y));
        CHECK(same_bits(cases[i].expected, builtin_corpus()[i].expected));
    }
    const auto golden = load_golden(dir + "/golden.txt", cases);
    for (const GoldenRow& row : builtin_golden()) {
        const GoldenRow* got = nullptr;
        for (const GoldenRow& r : golden)
            if (r.case_id == row.case_id) got = &r;
        REQUIRE(got != nullptr);
        for (AlgorithmId alg : kAllAlgorithms)
            CHECK(got->bits_for(alg) == row.bits_for(alg));
    }
}

TEST_CASE("empty corpus file loads as an empty list") {
    std::istringstream in("\n# nothing here\n\n");
    CHECK(parse_corpus(in, "empty").empty());
}

TEST_CASE("corpus parse errors carry the line number") {
    {
        std::istringstream in("1; 0x1p0; 0x1p0; 0x1p0\n");
        CHECK_THROWS_WITH_AS(parse_corpus(in, "bad"),
                             doctest::Contains("bad:1"), std::runtime_error);
    }
    {
        std::istringstream in(
            "# comment\n"
            "1; 0x1p0; zebra; 0x1p0; 0x1p1023; 0x1p-1023; -0x1p-1023; n\n");
        CHECK_THROWS_WITH_AS(parse_corpus(in, "bad"),
                             doctest::Contains("bad:2"), std::runtime_error);
    }
}

TEST_CASE("corpus loader rejects a tampered quotient") {
    // case 1 with the imaginary sign flipped
    std::istringstream in(
        "1; 0x1p0; 0x1p0; 0x1p0; 0x1p1023; 0x1p-1023; 0x1p-1023; tampered\n");
    CHECK_THROWS_WITH_AS(parse_corpus(in, "t"),
                         doctest::Contains("disagrees with the oracle"),
                         std::runtime_error);
}

TEST_CASE("missing files raise errors") {
    CHECK_THROWS_AS(load_corpus("./no_such_file.txt"), std::runtime_error);
    CHECK_THROWS_AS(load_golden("./no_such_file.txt", builtin_corpus()),
                    std::runtime_error);
}

TEST_CASE("golden loader rejects an incomplete table") {
    const std::string path = temp_path("golden_partial");
    {
        std::ofstream out(path);
        out << "1; naive; 0\n";
    }
    CHECK_THROWS_AS(load_golden(path, builtin_corpus()), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("run_golden on a subset of algorithms") {
    const auto cells = run_golden(builtin_corpus(), builtin_golden(),
                                  {AlgorithmId::naive});
    CHECK(cells.size() == 10);
    for (const GoldenCell& cell : cells) {
        CHECK(cell.bits == 0);
        CHECK(cell.pass);
    }
}
