#include <numeric>
#include <string>

#include "doctest.h"
#include "gpabm/genome.hpp"

using namespace gpabm;

namespace {

std::string padded(std::string s) {
    s.resize(Genome::kSerializedLength, '.');
    return s;
}

Genome random_genome(Rng& rng) {
    Genome g;
    g.program = random_program(rng);
    auto& r = g.initial_registers;
    r.next = RegisterFile::kFirstAddress + static_cast<int>(rng.below(g.program.size()));
    r.best_dir = static_cast<Direction>(rng.below(5));
    r.best_dist = rng.range(0, 9);
    r.best_res = rng.range(0, 9);
    return g;
}

}  // namespace

TEST_CASE("parse minimal two-instruction genome") {
    const Genome g = parse_genome(padded("05Z00XM"));
    CHECK(g.program == Program{Opcode::X, Opcode::M});
    CHECK(g.initial_registers == RegisterFile{});
    CHECK(g.initial_registers.best_dir == Direction::None);
}

TEST_CASE("parse a full 27-instruction program") {
    const std::string s = "05Z00X" + std::string(26, 'M');
    REQUIRE(s.size() == 32);
    const Genome g = parse_genome(s);
    CHECK(g.program.size() == 27);
    CHECK(g.program[0] == Opcode::X);
    for (std::size_t i = 1; i < 27; ++i) CHECK(g.program[i] == Opcode::M);
    CHECK(serialize_genome(g) == s);
}

TEST_CASE("parse decodes registers") {
    const Genome g = parse_genome(padded("06R37XMU"));
    CHECK(g.initial_registers.next == 6);
    CHECK(g.initial_registers.best_dir == Direction::Right);
    CHECK(g.initial_registers.best_dist == 3);
    CHECK(g.initial_registers.best_res == 7);
}

TEST_CASE("parse rejects malformed genomes") {
    CHECK_THROWS_AS(parse_genome(padded("05Q00XM")), GenomeError);        // bDir
    CHECK_THROWS_AS(parse_genome("05Z00XM"), GenomeError);                // length
    CHECK_THROWS_AS(parse_genome(padded("05Z00XM") + "."), GenomeError);  // length
    CHECK_THROWS_AS(parse_genome(padded("04Z00XM")), GenomeError);        // nextI low
    CHECK_THROWS_AS(parse_genome(padded("32Z00XM")), GenomeError);        // nextI high
    CHECK_THROWS_AS(parse_genome(padded("x5Z00XM")), GenomeError);        // nextI not decimal
    CHECK_THROWS_AS(parse_genome(padded("05Za0XM")), GenomeError);        // bDis
    CHECK_THROWS_AS(parse_genome(padded("05Z0?XM")), GenomeError);        // bRes
    CHECK_THROWS_AS(parse_genome(padded("05Z00")), GenomeError);          // empty program
    CHECK_THROWS_AS(parse_genome(padded("05Z00XQM")), GenomeError);       // invalid opcode
    CHECK_THROWS_AS(parse_genome(padded("05Z00X.M")), GenomeError);       // gap
    CHECK_THROWS_AS(parse_genome(padded("07Z00XM")), GenomeError);        // nextI past program
}

TEST_CASE("serialize pads with dots") {
    Genome g;
    g.program = Program{Opcode::X, Opcode::M};
    CHECK(serialize_genome(g) == "05Z00XM" + std::string(25, '.'));
    g.program = Program{Opcode::M};
    CHECK(serialize_genome(g) == "05Z00M" + std::string(26, '.'));
}

TEST_CASE("codec round-trips random genomes") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const Genome g = random_genome(rng);
        const std::string s = serialize_genome(g);
        REQUIRE(s.size() == 32);
        CHECK(parse_genome(s) == g);
        CHECK(serialize_genome(parse_genome(s)) == s);
    }
}

TEST_CASE("program length bounds") {
    CHECK_THROWS_AS(Program(std::span<const Opcode>{}), GenomeError);
    CHECK_THROWS_AS(Program::from_string(std::string(28, 'M')), GenomeError);
    Program p = Program::from_string(std::string(27, 'M'));
    CHECK_FALSE(p.insert(0, Opcode::X));
    Program one{Opcode::X};
    CHECK_FALSE(one.erase(0));
    CHECK(one.size() == 1);
}

TEST_CASE("random_program length and opcode distribution") {
    Rng rng(7);
    constexpr int kDraws = 10000;
    long total_len = 0;
    std::array<long, 6> freq{};
    std::array<long, 28> len_hist{};
    for (int i = 0; i < kDraws; ++i) {
        const Program p = random_program(rng);
        REQUIRE(p.size() >= 1);
        REQUIRE(p.size() <= 27);
        total_len += static_cast<long>(p.size());
        ++len_hist[p.size()];
        for (Opcode op : p.ops()) ++freq[static_cast<std::size_t>(op)];
    }
    const double mean = static_cast<double>(total_len) / kDraws;
    CHECK(std::abs(mean - 14.0) < 0.5);
    for (long f : freq) CHECK(std::abs(static_cast<double>(f) / total_len - 1.0 / 6.0) < 0.01);

    // Chi-square of the length histogram against uniform on 1..27, 26 degrees
    // of freedom; 54.05 is the 0.999 quantile.
    const double expected = kDraws / 27.0;
    double chi2 = 0.0;
    for (std::size_t len = 1; len <= 27; ++len) {
        chi2 += (len_hist[len] - expected) * (len_hist[len] - expected) / expected;
    }
    CHECK(chi2 < 54.05);
}

TEST_CASE("fetch_advance steps and wraps") {
    const Program p{Opcode::X, Opcode::M, Opcode::M};
    RegisterFile r;
    CHECK(fetch_advance(r, p) == Opcode::X);
    CHECK(r.next == 6);

    r.next = 7;
    CHECK(fetch_advance(r, p) == Opcode::M);
    CHECK(r.next == 5);

    const Program single{Opcode::M};
    RegisterFile s;
    for (int i = 0; i < 3; ++i) {
        CHECK(fetch_advance(s, single) == Opcode::M);
        CHECK(s.next == 5);
    }
}

TEST_CASE("fetch_advance rejects a pointer outside the program") {
    const Program p{Opcode::X, Opcode::M};
    RegisterFile r;
    r.next = 7;
    CHECK_THROWS_AS(fetch_advance(r, p), std::logic_error);
}

TEST_CASE("pointer persistence executes the program evenly across cycles") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Program p = random_program(rng);
        const int capacity = rng.range(1, 6);
        const int len = static_cast<int>(p.size());
        const int cycles = std::lcm(capacity, len) / capacity;
        RegisterFile r;
        std::array<int, 6> executed{};
        for (int c = 0; c < cycles; ++c) {
            for (int x = 0; x < capacity; ++x) {
                ++executed[static_cast<std::size_t>(fetch_advance(r, p))];
                REQUIRE(r.next >= 5);
                REQUIRE(r.next <= 5 + len - 1);
            }
        }
        std::array<int, 6> expected{};
        for (Opcode op : p.ops()) expected[static_cast<std::size_t>(op)] += std::lcm(capacity, len) / len;
        CHECK(executed == expected);
        CHECK(r.next == 5);
    }
}
