// Writes a labelled CSV of random DNA sequences. Class 1 ("coding") draws
// bases from a codon-position dependent composition with a mild G/C lift on
// the first and third positions; class 0 ("intergenic") is AT-rich and
// position independent. The difference is small on purpose.

#include "qgenome/rng.hpp"

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using Composition = std::array<double, 4>;  // A, C, G, T

constexpr std::array<char, 4> kBases{ 'A', 'C', 'G', 'T' };

char draw_base(qgenome::Rng &rng, const Composition &p) {
    const double u = rng.canonical();
    double acc = 0.0;
    for (std::size_t b = 0; b < 3; ++b) {
        acc += p[b];
        if (u < acc) {
            return kBases[b];
        }
    }
    return kBases[3];
}

std::string make_sequence(qgenome::Rng &rng, int length, bool coding) {
    static constexpr Composition intergenic{ 0.27, 0.23, 0.23, 0.27 };
    static constexpr std::array<Composition, 3> codon{ { { 0.25, 0.24, 0.28, 0.23 }, { 0.27, 0.23, 0.23, 0.27 }, { 0.24, 0.26, 0.25, 0.25 } } };
    const int offset = static_cast<int>(rng.below(3));
    std::string s;
    s.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        s.push_back(draw_base(rng, coding ? codon[static_cast<std::size_t>((i + offset) % 3)] : intergenic));
    }
    return s;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Generate a synthetic coding vs intergenic sequence corpus" };
    int per_class = 500;
    int length = 200;
    std::uint64_t seed = 20240917;
    std::string out_path;
    app.add_option("--per-class", per_class, "Sequences per class")->check(CLI::Range(1, 1000000));
    app.add_option("--length", length, "Sequence length")->check(CLI::Range(8, 100000));
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--out", out_path, "Output CSV")->required();
    CLI11_PARSE(app, argc, argv);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 2;
    }
    qgenome::Rng rng(seed);
    out << "id,sequence,label\n";
    for (int i = 0; i < 2 * per_class; ++i) {
        const bool coding = i % 2 == 0;
        out << "seq" << i << ',' << make_sequence(rng, length, coding) << ',' << (coding ? 1 : 0) << '\n';
    }
    return 0;
}
