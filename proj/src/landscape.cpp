#include "gpabm/landscape.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gpabm {

Landscape::Landscape(int width, int height, double capacity, double regrowth)
    : width_(width),
      height_(height),
      capacity_(capacity),
      regrowth_(regrowth),
      resource_(static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)), capacity),
      occupant_(resource_.size(), kVacant) {
    if (width < 1 || height < 1) throw std::invalid_argument("landscape dimensions must be positive");
    if (capacity < 0 || regrowth < 0) throw std::invalid_argument("capacity and regrowth must be non-negative");
}

Position Landscape::offset(Position p, Direction dir, int distance) const {
    switch (dir) {
        case Direction::Up: p.y -= distance; break;
        case Direction::Down: p.y += distance; break;
        case Direction::Left: p.x -= distance; break;
        case Direction::Right: p.x += distance; break;
        case Direction::None: break;
    }
    p.x = ((p.x % width_) + width_) % width_;
    p.y = ((p.y % height_) + height_) % height_;
    return p;
}

void Landscape::set_resource(Position p, double amount) {
    resource_[index(p)] = std::clamp(amount, 0.0, capacity_);
}

double Landscape::total_resource() const { return std::accumulate(resource_.begin(), resource_.end(), 0.0); }

std::optional<AgentId> Landscape::occupant(Position p) const {
    const AgentId id = occupant_[index(p)];
    if (id == kVacant) return std::nullopt;
    return id;
}

void Landscape::place(AgentId id, Position p) {
    AgentId& slot = occupant_[index(p)];
    if (slot != kVacant) throw std::logic_error("cell already occupied");
    slot = id;
    ++occupied_count_;
}

void Landscape::remove(AgentId id, Position p) {
    AgentId& slot = occupant_[index(p)];
    if (slot != id) throw std::logic_error("agent " + std::to_string(id) + " is not at the given cell");
    slot = kVacant;
    --occupied_count_;
}

double Landscape::regrow() {
    double added = 0.0;
    for (double& r : resource_) {
        const double next = std::min(r + regrowth_, capacity_);
        added += next - r;
        r = next;
    }
    return added;
}

std::optional<ScanHit> Landscape::scan(Position origin, Direction dir, int vision, double threshold) const {
    std::optional<ScanHit> best;
    for (int d = 1; d <= vision; ++d) {
        const double r = resource(offset(origin, dir, d));
        if (!best || r > best->resource) best = ScanHit{d, r};
    }
    if (best && best->resource > threshold) return best;
    return std::nullopt;
}

bool Landscape::move_agent(AgentId id, Position from, Direction dir, int distance) {
    if (occupant_[index(from)] != id) {
        throw std::logic_error("agent " + std::to_string(id) + " is not at the given cell");
    }
    if (distance == 0 || dir == Direction::None) return true;
    const Position to = offset(from, dir, distance);
    if (occupied(to)) return false;
    occupant_[index(from)] = kVacant;
    occupant_[index(to)] = id;
    return true;
}

double Landscape::harvest(Position p) {
    const double taken = std::exchange(resource_[index(p)], 0.0);
    harvested_ += taken;
    return taken;
}

std::optional<Position> Landscape::empty_neighbor(Position p, Rng& rng) const {
    std::array<Position, 4> free{};
    std::size_t n = 0;
    for (Direction d : {Direction::Up, Direction::Down, Direction::Left, Direction::Right}) {
        const Position q = offset(p, d, 1);
        if (!occupied(q)) free[n++] = q;
    }
    if (n == 0) return std::nullopt;
    return free[rng.below(n)];
}

}  // namespace gpabm
