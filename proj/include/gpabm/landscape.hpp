// landscape.hpp -- flat toroidal grid of renewing resources with
// single-occupancy cells.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gpabm/genome.hpp"
#include "gpabm/rng.hpp"

namespace gpabm {

using AgentId = std::uint64_t;

struct Position {
    int x = 0;
    int y = 0;
    friend bool operator==(const Position&, const Position&) = default;
};

struct ScanHit {
    int distance = 0;
    double resource = 0.0;
};

class Landscape {
public:
    static constexpr int kMaxVision = 9;

    /// All cells start at full capacity.
    Landscape(int width, int height, double capacity, double regrowth);

    int width() const { return width_; }
    int height() const { return height_; }
    int cell_count() const { return width_ * height_; }
    double capacity() const { return capacity_; }
    double regrowth() const { return regrowth_; }

    /// `distance` cells along `dir`, wrapping at the edges. Up decreases y.
    Position offset(Position p, Direction dir, int distance) const;

    double resource(Position p) const { return resource_[index(p)]; }
    void set_resource(Position p, double amount);
    double total_resource() const;

    std::optional<AgentId> occupant(Position p) const;
    bool occupied(Position p) const { return occupant_[index(p)] != kVacant; }
    int occupied_count() const { return occupied_count_; }

    /// Throws std::logic_error if the cell is already taken.
    void place(AgentId id, Position p);
    /// Throws std::logic_error if `id` is not at `p`.
    void remove(AgentId id, Position p);

    /// Adds one step of regrowth to every cell, saturating at capacity.
    /// Returns the amount actually added.
    double regrow();

    /// Best cell within `vision` cells along `dir`: maximum resource, nearest
    /// of the tied maxima. Absent unless that maximum strictly exceeds
    /// `threshold`.
    std::optional<ScanHit> scan(Position origin, Direction dir, int vision, double threshold) const;

    /// Moves `id` from `from` unless the target cell is held by another
    /// agent. A zero distance always succeeds.
    bool move_agent(AgentId id, Position from, Direction dir, int distance);

    /// Takes the whole stock of the cell.
    double harvest(Position p);
    /// Running total of everything harvested so far.
    double total_harvested() const { return harvested_; }

    /// Uniformly random free cell among the four von Neumann neighbours.
    std::optional<Position> empty_neighbor(Position p, Rng& rng) const;

private:
    static constexpr AgentId kVacant = std::numeric_limits<AgentId>::max();

    std::size_t index(Position p) const {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.x);
    }

    int width_;
    int height_;
    double capacity_;
    double regrowth_;
    std::vector<double> resource_;
    std::vector<AgentId> occupant_;
    int occupied_count_ = 0;
    double harvested_ = 0.0;
};

}  // namespace gpabm
