// Regenerates the shipped data files from the builtin tables.

#include <cstdio>

#include "cdiv/corpus.hpp"

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    const std::string corpus = dir + "/corpus.txt";
    const std::string golden = dir + "/golden.txt";
    cdiv::save_corpus(cdiv::builtin_corpus(), corpus);
    cdiv::save_golden(cdiv::builtin_golden(), golden);
    std::printf("wrote %s and %s\n", corpus.c_str(), golden.c_str());
    return 0;
}
