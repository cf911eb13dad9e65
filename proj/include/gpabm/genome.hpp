// genome.hpp -- linear programs, the 32-character genome codec and the
// instruction fetch loop of the agent virtual machine.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gpabm/rng.hpp"

namespace gpabm {

/// The six agent instructions: four looks, move, reproduce.
enum class Opcode : std::uint8_t { U, D, L, R, M, X };

inline constexpr std::array<Opcode, 6> kAllOpcodes = {Opcode::U, Opcode::D, Opcode::L,
                                                      Opcode::R, Opcode::M, Opcode::X};

char to_char(Opcode op);
/// Throws std::invalid_argument for anything outside "UDLRMX".
Opcode opcode_from_char(char c);

/// Register value for the best-seen direction; None is the 'Z' (no data) state.
enum class Direction : std::uint8_t { Up, Down, Left, Right, None };

char to_char(Direction d);
Direction look_direction(Opcode op);  // U/D/L/R only

class GenomeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered instruction list of 1..27 opcodes. Stored inline so agents and
/// genotype keys stay cheap to copy.
class Program {
public:
    static constexpr std::size_t kMaxLength = 27;

    Program() = default;  // single M; a Program is never empty
    Program(std::initializer_list<Opcode> ops);
    explicit Program(std::span<const Opcode> ops);
    /// Parses a bare opcode string such as "XMM".
    static Program from_string(std::string_view ops);

    std::size_t size() const { return length_; }
    Opcode operator[](std::size_t i) const { return ops_[i]; }
    std::span<const Opcode> ops() const { return {ops_.data(), length_}; }
    bool contains(Opcode op) const;
    std::string to_string() const;

    // Editing primitives used by mutation. Each returns false (and leaves the
    // program untouched) when the length bound would be violated.
    void set(std::size_t i, Opcode op) { ops_[i] = op; }
    bool insert(std::size_t gap, Opcode op);
    bool erase(std::size_t i);

    friend bool operator==(const Program& a, const Program& b) {
        return a.length_ == b.length_ && std::equal(a.ops_.begin(), a.ops_.begin() + a.length_, b.ops_.begin());
    }

private:
    std::array<Opcode, kMaxLength> ops_{Opcode::M};
    std::uint8_t length_ = 1;
};

/// Runtime registers. `next` is the genome-string position of the next
/// instruction: 5 addresses the first program slot, 31 the last.
struct RegisterFile {
    static constexpr int kFirstAddress = 5;
    static constexpr int kLastAddress = 31;

    int next = kFirstAddress;
    Direction best_dir = Direction::None;
    int best_dist = 0;  // 0..9
    int best_res = 0;   // 0..9

    void clear_best() {
        best_dir = Direction::None;
        best_dist = 0;
        best_res = 0;
    }
    friend bool operator==(const RegisterFile&, const RegisterFile&) = default;
};

struct Genome {
    static constexpr std::size_t kSerializedLength = 32;
    static constexpr char kPad = '.';

    Program program;
    RegisterFile initial_registers;

    friend bool operator==(const Genome&, const Genome&) = default;
};

/// Decodes "NNdsrPPPP...": two-digit next address, direction, distance digit,
/// resource digit, then the program padded with '.' to 32 characters.
Genome parse_genome(std::string_view s);
std::string serialize_genome(const Genome& g);

/// Returns the instruction addressed by `regs.next` and advances the pointer,
/// wrapping to the first instruction after the last one. The pointer is
/// agent state, so execution resumes where the previous cycle stopped.
Opcode fetch_advance(RegisterFile& regs, const Program& program);

/// Length uniform on 1..27, each opcode uniform and independent.
Program random_program(Rng& rng);

}  // namespace gpabm
