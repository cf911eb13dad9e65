#include "gpabm/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace gpabm {

namespace {

using Key = std::array<char, Genome::kSerializedLength>;

Key key_of(const Genome& g) {
    Key k;
    const std::string s = serialize_genome(g);
    std::copy(s.begin(), s.end(), k.begin());
    return k;
}

std::string to_string(const Key& k) { return {k.begin(), k.end()}; }

}  // namespace

Census census(const World& world) {
    Census out;
    StepRecord& rec = out.step;
    rec.step = world.step();
    rec.births = world.births_last_step();
    rec.deaths = world.deaths_last_step();

    std::vector<Key> keys;
    keys.reserve(world.agents().size());
    double surplus = 0.0;
    double length = 0.0;
    for (const AgentState& a : world.agents()) {
        if (!a.alive) continue;
        keys.push_back(key_of(a.genome));
        surplus += a.surplus;
        const auto len = static_cast<int>(a.genome.program.size());
        length += len;
        rec.max_length = std::max(rec.max_length, len);
        if (!a.genome.program.contains(Opcode::X)) ++rec.no_x_count;
    }
    rec.population = static_cast<std::int64_t>(keys.size());
    if (keys.empty()) return out;
    rec.mean_surplus = surplus / static_cast<double>(keys.size());
    rec.mean_length = length / static_cast<double>(keys.size());

    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const auto count = static_cast<std::int64_t>(j - i);
        out.genotypes.push_back({rec.step, to_string(keys[i]), count});
        if (count > rec.modal_count) {
            rec.modal_count = count;
            rec.modal_program = out.genotypes.back().program;
        }
        i = j;
    }
    rec.unique_genotypes = static_cast<std::int64_t>(out.genotypes.size());
    return out;
}

std::int64_t predicted_K(const SimConfig& config) {
    if (config.metabolism <= 0.0) throw std::invalid_argument("predicted_K needs a positive metabolism");
    const double inflow = static_cast<double>(config.width) * config.height * config.regrowth;
    // Guard against 0.1 * 10 style rounding just below an integer.
    return static_cast<std::int64_t>(std::floor(inflow / config.metabolism + 1e-9));
}

TailStats tail_stats(std::span<const double> series, double window) {
    if (series.empty()) throw std::invalid_argument("empty population series");
    if (!(window > 0.0 && window <= 1.0)) throw std::invalid_argument("window must be in (0, 1]");
    auto n = static_cast<std::size_t>(std::ceil(window * static_cast<double>(series.size()) - 1e-9));
    n = std::clamp<std::size_t>(n, 1, series.size());
    const auto tail = series.last(n);

    TailStats s;
    for (double v : tail) s.mean += v;
    s.mean /= static_cast<double>(n);
    if (s.mean == 0.0) return s;
    double var = 0.0;
    for (double v : tail) var += (v - s.mean) * (v - s.mean);
    s.cv = std::sqrt(var / static_cast<double>(n)) / s.mean;
    return s;
}

double realized_K(std::span<const double> series, double window, double predicted) {
    if (predicted <= 0.0) throw std::invalid_argument("predicted capacity must be positive");
    return tail_stats(series, window).mean / predicted;
}

ViabilityTracker::ViabilityTracker(int founders, double horizon)
    : founders_(founders),
      horizon_(horizon),
      death_step_(static_cast<std::size_t>(founders), kNever),
      first_birth_step_(static_cast<std::size_t>(founders), kNever) {}

void ViabilityTracker::on_birth(const AgentState& parent, const AgentState&, std::int64_t step) {
    if (parent.id < static_cast<AgentId>(founders_)) {
        auto& first = first_birth_step_[parent.id];
        first = std::min(first, step);
    }
}

void ViabilityTracker::on_death(const AgentState& agent, std::int64_t step) {
    if (agent.id < static_cast<AgentId>(founders_)) death_step_[agent.id] = step;
}

void ViabilityTracker::on_step(const World& world) { population_.push_back(static_cast<double>(world.population())); }

std::int64_t ViabilityTracker::minimum_step() const {
    if (population_.empty()) return 0;
    auto n = static_cast<std::size_t>(std::ceil(horizon_ * static_cast<double>(population_.size())));
    n = std::clamp<std::size_t>(n, 1, population_.size());
    return std::min_element(population_.begin(), population_.begin() + static_cast<std::ptrdiff_t>(n)) -
           population_.begin();
}

double ViabilityTracker::fraction(ViabilityMode mode) const {
    if (founders_ == 0) return 0.0;
    const std::int64_t t = minimum_step();
    int viable = 0;
    for (std::size_t i = 0; i < death_step_.size(); ++i) {
        if (death_step_[i] <= t) continue;
        const std::int64_t by = mode == ViabilityMode::ByMinimum ? t : kNever - 1;
        if (first_birth_step_[i] <= by) ++viable;
    }
    return static_cast<double>(viable) / founders_;
}

void RunRecorder::on_death(const AgentState& agent, std::int64_t) {
    if (agent.age <= 1) ++pending_young_;
}

void RunRecorder::on_step(const World& world) {
    Census c = census(world);
    population_.push_back(static_cast<double>(c.step.population));
    young_deaths_.push_back(std::exchange(pending_young_, 0));
    all_deaths_.push_back(c.step.deaths);
    if (on_census) on_census(c);
    records_.push_back(std::move(c.step));
}

std::vector<Exclusion> detect_exclusions(const GenotypeSeries& series, int threshold) {
    std::vector<Exclusion> out;
    const auto window = static_cast<std::size_t>(std::max(threshold, 1));
    for (const auto& [loser, b] : series) {
        for (std::size_t t = 1; t < b.size(); ++t) {
            if (b[t] != 0 || b[t - 1] == 0) continue;
            if (t + window > b.size()) continue;
            if (!std::all_of(b.begin() + static_cast<std::ptrdiff_t>(t),
                             b.begin() + static_cast<std::ptrdiff_t>(t + window), [](auto c) { return c == 0; })) {
                continue;
            }
            for (const auto& [winner, a] : series) {
                if (winner == loser) continue;
                std::size_t together = 0;
                for (std::size_t s = t; s-- > 0 && a[s] > 0 && b[s] > 0;) ++together;
                if (together < window) continue;
                const bool persists =
                    std::all_of(a.begin() + static_cast<std::ptrdiff_t>(t),
                                a.begin() + static_cast<std::ptrdiff_t>(t + window), [](auto c) { return c > 0; });
                if (persists) out.push_back({winner, loser, static_cast<std::int64_t>(t)});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Exclusion& x, const Exclusion& y) {
        return std::tie(x.step, x.loser, x.winner) < std::tie(y.step, y.loser, y.winner);
    });
    return out;
}

RunSummary summarize(const SimConfig& config, std::span<const double> population, double window,
                     double viability) {
    std::vector<double> padded(population.begin(), population.end());
    padded.resize(std::max<std::size_t>(padded.size(), static_cast<std::size_t>(config.max_steps) + 1), 0.0);

    RunSummary s;
    s.config = config;
    s.predicted_K = predicted_K(config);
    const TailStats tail = tail_stats(padded, window);
    s.steady_mean_population = tail.mean;
    s.steady_cv = tail.cv;
    s.realized_K = s.predicted_K > 0 ? tail.mean / static_cast<double>(s.predicted_K) : 0.0;
    s.viability_fraction = viability;
    return s;
}

}  // namespace gpabm
