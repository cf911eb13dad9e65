#include "gpabm/mutation.hpp"

namespace gpabm {

bool apply_mutation(Program& program, MutationKind kind, std::size_t pos, Opcode op) {
    switch (kind) {
        case MutationKind::Flip:
            if (pos >= program.size() || program[pos] == op) return false;
            program.set(pos, op);
            return true;
        case MutationKind::Insert:
            return program.insert(pos, op);
        case MutationKind::Delete:
            return program.erase(pos);
    }
    return false;
}

Opcode different_opcode(Opcode current, Rng& rng) {
    auto pick = static_cast<std::size_t>(rng.below(kAllOpcodes.size() - 1));
    if (pick >= static_cast<std::size_t>(current)) ++pick;
    return kAllOpcodes[pick];
}

namespace {

MutationKind draw_kind(Rng& rng) { return static_cast<MutationKind>(rng.below(3)); }

void mutate_at(Program& program, MutationKind kind, std::size_t pos, Rng& rng) {
    switch (kind) {
        case MutationKind::Flip:
            apply_mutation(program, kind, pos, different_opcode(program[pos], rng));
            break;
        case MutationKind::Insert:
            if (program.size() < Program::kMaxLength) {
                apply_mutation(program, kind, pos, kAllOpcodes[rng.below(kAllOpcodes.size())]);
            }
            break;
        case MutationKind::Delete:
            apply_mutation(program, kind, pos, Opcode::M);
            break;
    }
}

}  // namespace

int mutate(Program& program, MutationMode mode, double mu, Rng& rng) {
    const double p = 1.0 / mu;
    if (mode == MutationMode::PerProgram) {
        if (!rng.chance(p)) return 0;
        const MutationKind kind = draw_kind(rng);
        const std::size_t slots = program.size() + (kind == MutationKind::Insert ? 1 : 0);
        mutate_at(program, kind, static_cast<std::size_t>(rng.below(slots)), rng);
        return 1;
    }
    // Walk backwards so edits never shift positions still to be visited.
    int events = 0;
    for (std::size_t i = program.size(); i-- > 0;) {
        if (!rng.chance(p)) continue;
        ++events;
        mutate_at(program, draw_kind(rng), i, rng);
    }
    return events;
}

}  // namespace gpabm
