// metrics.hpp -- census, carry capacity, viability and exclusion detection.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gpabm/config.hpp"
#include "gpabm/world.hpp"

namespace gpabm {

struct StepRecord {
    std::int64_t step = 0;
    std::int64_t population = 0;
    std::int64_t births = 0;
    std::int64_t deaths = 0;
    double mean_surplus = 0.0;
    double mean_length = 0.0;
    int max_length = 0;
    std::int64_t unique_genotypes = 0;
    std::int64_t no_x_count = 0;  // agents whose program has no X
    std::string modal_program;    // serialized genome, empty when extinct
    std::int64_t modal_count = 0;
};

struct GenotypeRecord {
    std::int64_t step = 0;
    std::string program;  // serialized genome
    std::int64_t count = 0;
};

struct Census {
    StepRecord step;
    std::vector<GenotypeRecord> genotypes;  // ascending by serialized genome
};

/// Exact genotype counts of the living population. The modal genotype is
/// the most common one, ties going to the lexicographically smallest.
Census census(const World& world);

/// Agents sustainable by the per-step resource inflow:
/// floor(width * height * regrowth / metabolism).
std::int64_t predicted_K(const SimConfig& config);

struct TailStats {
    double mean = 0.0;
    double cv = 0.0;  // population standard deviation over mean, 0 when mean is 0
};

/// Mean and coefficient of variation over the last ceil(window * n)
/// entries (at least one).
TailStats tail_stats(std::span<const double> series, double window);

/// Tail mean of the population series divided by the predicted capacity.
double realized_K(std::span<const double> series, double window, double predicted);

enum class ViabilityMode {
    ByMinimum,   // founder has offspring by the minimum step
    Eventually,  // founder alive at the minimum reproduces at some point
};

/// Fraction of founders alive at the initial population minimum that have
/// reproduced. The minimum is the earliest argmin of the population over the
/// first `horizon` fraction of the series.
class ViabilityTracker : public Observer {
public:
    explicit ViabilityTracker(int founders, double horizon = 0.1);

    void on_birth(const AgentState& parent, const AgentState& child, std::int64_t step) override;
    void on_death(const AgentState& agent, std::int64_t step) override;
    void on_step(const World& world) override;

    std::int64_t minimum_step() const;
    double fraction(ViabilityMode mode = ViabilityMode::ByMinimum) const;

private:
    static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    int founders_;
    double horizon_;
    std::vector<std::int64_t> death_step_;
    std::vector<std::int64_t> first_birth_step_;
    std::vector<double> population_;
};

/// Keeps the population series and death ages of a run and forwards each
/// census to optional sinks.
class RunRecorder : public Observer {
public:
    std::function<void(const Census&)> on_census;

    void on_death(const AgentState& agent, std::int64_t step) override;
    void on_step(const World& world) override;

    const std::vector<double>& population() const { return population_; }
    const std::vector<StepRecord>& records() const { return records_; }
    /// Deaths per step, split by whether the agent had lived at most one cycle.
    const std::vector<std::int64_t>& young_deaths() const { return young_deaths_; }
    const std::vector<std::int64_t>& all_deaths() const { return all_deaths_; }

private:
    std::vector<double> population_;
    std::vector<StepRecord> records_;
    std::vector<std::int64_t> young_deaths_;
    std::vector<std::int64_t> all_deaths_;
    std::int64_t pending_young_ = 0;
};

struct Exclusion {
    std::string winner;
    std::string loser;
    std::int64_t step = 0;  // index into the series where the loser hit zero
};

/// Genotype count series on a common step grid; every vector has the same
/// length.
using GenotypeSeries = std::map<std::string, std::vector<std::int64_t>>;

/// Reports (A, B, t) when B drops to zero at t after coexisting with A for at
/// least `threshold` consecutive samples, B stays absent for `threshold`
/// samples from t, and A stays present over the same window.
std::vector<Exclusion> detect_exclusions(const GenotypeSeries& series, int threshold);

struct RunSummary {
    SimConfig config;
    std::int64_t predicted_K = 0;
    double steady_mean_population = 0.0;
    double realized_K = 0.0;
    double viability_fraction = 0.0;
    double steady_cv = 0.0;
};

/// The population series is padded with zeros to max_steps + 1 entries so an
/// extinct run has a zero steady state.
RunSummary summarize(const SimConfig& config, std::span<const double> population, double window,
                     double viability);

}  // namespace gpabm
