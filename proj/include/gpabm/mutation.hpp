// mutation.hpp -- point mutation of programs at reproduction.
#pragma once

#include <cstddef>

#include "gpabm/config.hpp"
#include "gpabm/genome.hpp"
#include "gpabm/rng.hpp"

namespace gpabm {

enum class MutationKind { Flip, Insert, Delete };

/// Applies one edit. Flip writes `op` at `pos`; Insert puts `op` in gap
/// `pos` (0..size); Delete removes `pos`. Insert on a full program and
/// Delete on a single instruction are no-ops. Returns whether the program
/// changed length or content.
bool apply_mutation(Program& program, MutationKind kind, std::size_t pos, Opcode op);

/// Uniformly random opcode different from `current`.
Opcode different_opcode(Opcode current, Rng& rng);

/// Mutates `program` in place and returns the number of mutation events
/// drawn (including ones a length guard turned into no-ops).
///
/// PerProgram: one event with probability 1/mu, uniform kind, uniform
/// location (gaps for inserts). PerInstruction: every position triggers
/// independently with probability 1/mu; an insert goes in front of its
/// position.
int mutate(Program& program, MutationMode mode, double mu, Rng& rng);

}  // namespace gpabm
