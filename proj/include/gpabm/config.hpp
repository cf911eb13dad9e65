// config.hpp -- every free parameter of a single run.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpabm/genome.hpp"

namespace gpabm {

enum class MutationMode { PerProgram, PerInstruction };

std::string to_string(MutationMode m);

struct SimConfig {
    int compute_capacity = 1;      // instructions per action cycle
    double infertility = 1.0;      // reproduction fires with probability 1/infertility
    double birth_cost = 0.0;       // surplus destroyed by a successful birth
    // Minimum age (cycles) to reproduce. Ages advance at the end of every
    // cycle, so 1 lets an agent reproduce from the cycle after its birth.
    // With 0 newborns join the current action list.
    int puberty = 1;
    double metabolism = 1.0;       // resource units burned per action cycle
    double mu = 30.0;              // mutation probability is 1/mu
    MutationMode mutation_mode = MutationMode::PerProgram;
    int initial_population = 400;
    double initial_endowment = 0.0;  // surplus of founders and newborns
    std::int64_t max_steps = 10000;

    int width = 30;
    int height = 30;
    double capacity = 4.0;
    double regrowth = 1.0;
    int vision = 9;

    // Agents whose burst contained no successful move forage their own cell
    // before paying metabolism. When off they only pay.
    bool idle_forage = true;
    // Clear bDir/bDis/bRes after each successful move.
    bool reset_registers = true;

    std::uint64_t seed = 1;

    // Founders are drawn from this list (cyclically) instead of random
    // programs when it is non-empty.
    std::vector<Genome> founders;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

}  // namespace gpabm
