#include "gpabm/world.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gpabm/mutation.hpp"

namespace gpabm {

namespace {

SimConfig validated(SimConfig config) {
    config.validate();
    return config;
}

}  // namespace

World::World(SimConfig config, Rng rng)
    : config_(validated(std::move(config))),
      rng_(rng),
      landscape_(config_.width, config_.height, config_.capacity, config_.regrowth) {}

World World::empty(SimConfig config) {
    const std::uint64_t seed = config.seed;
    return World(std::move(config), Rng(seed));
}

World::World(SimConfig config) : World(std::move(config), Rng(0)) {
    rng_ = Rng(config_.seed);
    std::vector<int> cells(static_cast<std::size_t>(landscape_.cell_count()));
    std::iota(cells.begin(), cells.end(), 0);
    rng_.shuffle(cells.begin(), cells.end());
    agents_.reserve(static_cast<std::size_t>(config_.initial_population));
    for (int i = 0; i < config_.initial_population; ++i) {
        Genome g;
        if (config_.founders.empty()) {
            g.program = random_program(rng_);
        } else {
            g = config_.founders[static_cast<std::size_t>(i) % config_.founders.size()];
        }
        const int c = cells[static_cast<std::size_t>(i)];
        add_agent(g, Position{c % config_.width, c / config_.width}, config_.initial_endowment);
    }
}

AgentId World::add_agent(const Genome& genome, Position at, double surplus) {
    AgentState a;
    a.id = next_id_++;
    a.position = at;
    a.surplus = surplus;
    a.genome = genome;
    a.registers = genome.initial_registers;
    a.birth_step = step_;
    landscape_.place(a.id, at);
    agents_.push_back(std::move(a));
    return agents_.back().id;
}

std::size_t World::index_of(AgentId id) const {
    auto it = std::lower_bound(agents_.begin(), agents_.end(), id,
                               [](const AgentState& a, AgentId v) { return a.id < v; });
    if (it == agents_.end() || it->id != id) throw std::out_of_range("no agent " + std::to_string(id));
    return static_cast<std::size_t>(it - agents_.begin());
}

const AgentState* World::find(AgentId id) const {
    auto it = std::lower_bound(agents_.begin(), agents_.end(), id,
                               [](const AgentState& a, AgentId v) { return a.id < v; });
    if (it == agents_.end() || it->id != id || !it->alive) return nullptr;
    return &*it;
}

void World::exec_instruction(AgentId id, Opcode op) { execute(index_of(id), op); }

void World::execute(std::size_t index, Opcode op) {
    switch (op) {
        case Opcode::U:
        case Opcode::D:
        case Opcode::L:
        case Opcode::R:
            look(agents_[index], look_direction(op));
            break;
        case Opcode::M:
            move(agents_[index]);
            break;
        case Opcode::X:
            reproduce(index);
            break;
    }
}

void World::look(AgentState& a, Direction dir) {
    auto hit = landscape_.scan(a.position, dir, config_.vision, a.registers.best_res);
    if (!hit) return;
    a.registers.best_dir = dir;
    a.registers.best_dist = hit->distance;
    a.registers.best_res = static_cast<int>(std::min(std::floor(hit->resource), 9.0));
}

void World::move(AgentState& a) {
    Direction dir = a.registers.best_dir;
    int distance = a.registers.best_dist;
    if (dir == Direction::None) {
        dir = static_cast<Direction>(rng_.below(4));
        distance = rng_.range(1, config_.vision);
    }
    if (!landscape_.move_agent(a.id, a.position, dir, distance)) return;
    a.position = landscape_.offset(a.position, dir, distance);
    a.surplus += landscape_.harvest(a.position) - config_.metabolism;
    a.moved_this_cycle = true;
    if (config_.reset_registers) a.registers.clear_best();
}

void World::reproduce(std::size_t index) {
    if (!rng_.chance(1.0 / config_.infertility)) return;
    {
        const AgentState& parent = agents_[index];
        if (parent.age < config_.puberty || parent.surplus < config_.birth_cost) return;
    }
    auto cell = landscape_.empty_neighbor(agents_[index].position, rng_);
    if (!cell) return;

    Genome child_genome;
    child_genome.program = agents_[index].genome.program;
    mutate(child_genome.program, config_.mutation_mode, config_.mu, rng_);
    add_agent(child_genome, *cell, config_.initial_endowment);  // may reallocate agents_

    AgentState& parent = agents_[index];
    parent.surplus -= config_.birth_cost;
    ++parent.offspring_count;
    ++births_;
    const std::size_t child = agents_.size() - 1;
    if (in_cycle_ && config_.puberty == 0) action_list_.push_back(child);
    for (Observer* o : observers_) o->on_birth(parent, agents_[child], step_ + 1);
}

void World::kill(std::size_t index) {
    AgentState& a = agents_[index];
    landscape_.remove(a.id, a.position);
    a.alive = false;
    ++pending_removals_;
    ++deaths_;
    for (Observer* o : observers_) o->on_death(a, step_ + 1);
}

void World::compact() {
    std::erase_if(agents_, [](const AgentState& a) { return !a.alive; });
    pending_removals_ = 0;
}

void World::action_cycle() {
    in_cycle_ = true;
    births_ = 0;
    deaths_ = 0;
    max_burst_ = 0;

    action_list_.resize(agents_.size());
    std::iota(action_list_.begin(), action_list_.end(), std::size_t{0});
    rng_.shuffle(action_list_.begin(), action_list_.end());

    // Newborns may be appended while iterating. With puberty 0 and no birth
    // cost, chains of newborns that reproduce and starve in the same cycle
    // need not terminate.
    const std::size_t cascade_limit = 1000 * static_cast<std::size_t>(landscape_.cell_count());
    for (std::size_t k = 0; k < action_list_.size(); ++k) {
        if (k >= cascade_limit) throw std::runtime_error("birth cascade exceeded 1000 activations per cell");
        const std::size_t index = action_list_[k];
        agents_[index].moved_this_cycle = false;
        int executed = 0;
        while (executed < config_.compute_capacity && agents_[index].surplus >= 0) {
            AgentState& a = agents_[index];
            execute(index, fetch_advance(a.registers, a.genome.program));
            ++executed;
        }
        AgentState& a = agents_[index];
        a.executed_this_cycle = executed;
        max_burst_ = std::max(max_burst_, executed);
        if (!a.moved_this_cycle) {
            const double foraged = config_.idle_forage ? landscape_.harvest(a.position) : 0.0;
            a.surplus += foraged - config_.metabolism;
        }
        if (a.surplus < 0) kill(index);
    }

    compact();
    landscape_.regrow();
    ++step_;
    for (AgentState& a : agents_) ++a.age;
    in_cycle_ = false;
    for (Observer* o : observers_) o->on_step(*this);
}

World run(const SimConfig& config, std::span<Observer* const> observers) {
    World world(config);
    world.set_observers({observers.begin(), observers.end()});
    for (Observer* o : observers) o->on_step(world);
    while (world.step() < config.max_steps && world.population() > 0) world.action_cycle();
    return world;
}

}  // namespace gpabm
