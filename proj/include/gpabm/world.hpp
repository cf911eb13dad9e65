// world.hpp -- agents, the action cycle and the run loop.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpabm/config.hpp"
#include "gpabm/genome.hpp"
#include "gpabm/landscape.hpp"
#include "gpabm/rng.hpp"

namespace gpabm {

struct AgentState {
    AgentId id = 0;
    Position position;
    double surplus = 0.0;
    int age = 0;
    Genome genome;
    RegisterFile registers;
    int offspring_count = 0;
    bool moved_this_cycle = false;  // a move already charged forage - metabolism
    int executed_this_cycle = 0;
    std::int64_t birth_step = 0;
    bool alive = true;
};

class World;

/// Receives engine events. Callbacks see the world between operations and
/// must not modify it.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void on_birth(const AgentState& /*parent*/, const AgentState& /*child*/, std::int64_t /*step*/) {}
    virtual void on_death(const AgentState& /*agent*/, std::int64_t /*step*/) {}
    /// Called once for the initial state (step 0) and after every cycle.
    virtual void on_step(const World& /*world*/) {}
};

class World {
public:
    /// Builds the initial population: founders on distinct random cells,
    /// random programs unless `config.founders` is set.
    explicit World(SimConfig config);

    /// Empty landscape at full capacity; agents are added by hand.
    static World empty(SimConfig config);

    const SimConfig& config() const { return config_; }
    const Landscape& landscape() const { return landscape_; }
    Landscape& landscape() { return landscape_; }
    std::int64_t step() const { return step_; }
    Rng& rng() { return rng_; }

    /// Living agents in id order (between cycles).
    std::span<const AgentState> agents() const { return agents_; }
    std::size_t population() const { return agents_.size() - pending_removals_; }
    const AgentState* find(AgentId id) const;

    int births_last_step() const { return births_; }
    int deaths_last_step() const { return deaths_; }
    /// Largest number of instructions any agent ran in the last cycle.
    int max_burst_last_step() const { return max_burst_; }

    AgentId add_agent(const Genome& genome, Position at, double surplus);

    void set_observers(std::vector<Observer*> observers) { observers_ = std::move(observers); }

    /// One full pass over the living agents in random order.
    void action_cycle();

    /// Executes one instruction for the agent with the given id.
    void exec_instruction(AgentId id, Opcode op);

private:
    World(SimConfig config, Rng rng);

    AgentState& agent_at(std::size_t index) { return agents_[index]; }
    std::size_t index_of(AgentId id) const;
    void execute(std::size_t index, Opcode op);
    void look(AgentState& a, Direction dir);
    void move(AgentState& a);
    void reproduce(std::size_t index);
    void kill(std::size_t index);
    void compact();

    SimConfig config_;
    Rng rng_;
    Landscape landscape_;
    std::vector<AgentState> agents_;  // id order; dead entries compacted after each cycle
    std::vector<std::size_t> action_list_;
    std::vector<Observer*> observers_;
    AgentId next_id_ = 0;
    std::int64_t step_ = 0;
    std::size_t pending_removals_ = 0;
    int births_ = 0;
    int deaths_ = 0;
    int max_burst_ = 0;
    bool in_cycle_ = false;
};

/// Runs action cycles until `max_steps` or extinction, notifying observers
/// with the initial state and after every cycle.
World run(const SimConfig& config, std::span<Observer* const> observers);

}  // namespace gpabm
