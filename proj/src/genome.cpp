#include "gpabm/genome.hpp"

#include <charconv>

namespace gpabm {

char to_char(Opcode op) {
    static constexpr char kChars[] = "UDLRMX";
    return kChars[static_cast<int>(op)];
}

Opcode opcode_from_char(char c) {
    switch (c) {
        case 'U': return Opcode::U;
        case 'D': return Opcode::D;
        case 'L': return Opcode::L;
        case 'R': return Opcode::R;
        case 'M': return Opcode::M;
        case 'X': return Opcode::X;
    }
    throw GenomeError(std::string("invalid instruction '") + c + "'");
}

char to_char(Direction d) {
    static constexpr char kChars[] = "UDLRZ";
    return kChars[static_cast<int>(d)];
}

Direction look_direction(Opcode op) {
    switch (op) {
        case Opcode::U: return Direction::Up;
        case Opcode::D: return Direction::Down;
        case Opcode::L: return Direction::Left;
        case Opcode::R: return Direction::Right;
        default: throw std::logic_error("not a look instruction");
    }
}

Program::Program(std::initializer_list<Opcode> ops) : Program(std::span<const Opcode>(ops.begin(), ops.size())) {}

Program::Program(std::span<const Opcode> ops) {
    if (ops.empty() || ops.size() > kMaxLength) {
        throw GenomeError("program length " + std::to_string(ops.size()) + " outside 1..27");
    }
    std::copy(ops.begin(), ops.end(), ops_.begin());
    length_ = static_cast<std::uint8_t>(ops.size());
}

Program Program::from_string(std::string_view text) {
    std::array<Opcode, kMaxLength> buf{};
    if (text.empty() || text.size() > kMaxLength) {
        throw GenomeError("program length " + std::to_string(text.size()) + " outside 1..27");
    }
    for (std::size_t i = 0; i < text.size(); ++i) buf[i] = opcode_from_char(text[i]);
    return Program(std::span<const Opcode>(buf.data(), text.size()));
}

bool Program::contains(Opcode op) const {
    return std::find(ops_.begin(), ops_.begin() + length_, op) != ops_.begin() + length_;
}

std::string Program::to_string() const {
    std::string s(length_, ' ');
    for (std::size_t i = 0; i < length_; ++i) s[i] = to_char(ops_[i]);
    return s;
}

bool Program::insert(std::size_t gap, Opcode op) {
    if (length_ >= kMaxLength || gap > length_) return false;
    std::copy_backward(ops_.begin() + gap, ops_.begin() + length_, ops_.begin() + length_ + 1);
    ops_[gap] = op;
    ++length_;
    return true;
}

bool Program::erase(std::size_t i) {
    if (length_ <= 1 || i >= length_) return false;
    std::copy(ops_.begin() + i + 1, ops_.begin() + length_, ops_.begin() + i);
    --length_;
    return true;
}

namespace {

int digit(char c, const char* field) {
    if (c < '0' || c > '9') throw GenomeError(std::string("register ") + field + " is not a digit");
    return c - '0';
}

Direction direction_from_char(char c) {
    switch (c) {
        case 'U': return Direction::Up;
        case 'D': return Direction::Down;
        case 'L': return Direction::Left;
        case 'R': return Direction::Right;
        case 'Z': return Direction::None;
    }
    throw GenomeError(std::string("invalid register value '") + c + "' for bDir");
}

}  // namespace

Genome parse_genome(std::string_view s) {
    if (s.size() != Genome::kSerializedLength) {
        throw GenomeError("genome must be 32 characters, got " + std::to_string(s.size()));
    }
    Genome g;
    int next = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + 2, next);
    if (ec != std::errc() || ptr != s.data() + 2 || next < RegisterFile::kFirstAddress ||
        next > RegisterFile::kLastAddress) {
        throw GenomeError("nextI field '" + std::string(s.substr(0, 2)) + "' not in 05..31");
    }
    g.initial_registers.next = next;
    g.initial_registers.best_dir = direction_from_char(s[2]);
    g.initial_registers.best_dist = digit(s[3], "bDis");
    g.initial_registers.best_res = digit(s[4], "bRes");

    const std::string_view body = s.substr(5);
    const std::size_t len = body.find(Genome::kPad);
    const std::string_view ops = body.substr(0, len);
    if (ops.empty()) throw GenomeError("empty program region");
    if (len != std::string_view::npos && body.find_first_not_of(Genome::kPad, len) != std::string_view::npos) {
        throw GenomeError("instruction after pad character");
    }
    g.program = Program::from_string(ops);
    if (next > RegisterFile::kFirstAddress + static_cast<int>(g.program.size()) - 1) {
        throw GenomeError("nextI addresses past the end of the program");
    }
    return g;
}

std::string serialize_genome(const Genome& g) {
    std::string s(Genome::kSerializedLength, Genome::kPad);
    const auto& r = g.initial_registers;
    s[0] = static_cast<char>('0' + r.next / 10);
    s[1] = static_cast<char>('0' + r.next % 10);
    s[2] = to_char(r.best_dir);
    s[3] = static_cast<char>('0' + r.best_dist);
    s[4] = static_cast<char>('0' + r.best_res);
    for (std::size_t i = 0; i < g.program.size(); ++i) s[5 + i] = to_char(g.program[i]);
    return s;
}

Opcode fetch_advance(RegisterFile& regs, const Program& program) {
    const int slot = regs.next - RegisterFile::kFirstAddress;
    if (slot < 0 || slot >= static_cast<int>(program.size())) {
        throw std::logic_error("instruction pointer " + std::to_string(regs.next) + " outside program");
    }
    regs.next = slot + 1 == static_cast<int>(program.size()) ? RegisterFile::kFirstAddress : regs.next + 1;
    return program[static_cast<std::size_t>(slot)];
}

Program random_program(Rng& rng) {
    std::array<Opcode, Program::kMaxLength> buf{};
    const auto len = static_cast<std::size_t>(rng.range(1, Program::kMaxLength));
    for (std::size_t i = 0; i < len; ++i) buf[i] = kAllOpcodes[rng.below(kAllOpcodes.size())];
    return Program(std::span<const Opcode>(buf.data(), len));
}

}  // namespace gpabm
