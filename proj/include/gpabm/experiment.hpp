// experiment.hpp -- run configuration files, single runs, sweeps and CSV
// output.
//
// Config files are UTF-8 `key=value` lines; '#' starts a comment. A value
// holding a comma-separated list sweeps that parameter; the run set is the
// cross product of all swept values (in order of appearance, last key
// fastest) times the seed list.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpabm/config.hpp"
#include "gpabm/metrics.hpp"

namespace gpabm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
    SimConfig base;
    std::vector<std::pair<std::string, std::vector<std::string>>> sweeps;
    std::vector<std::uint64_t> seeds{1};
    std::string output_dir;

    double steady_window = 0.2;      // final fraction of steps treated as steady state
    double viability_horizon = 0.1;  // initial fraction searched for the population minimum
    ViabilityMode viability_mode = ViabilityMode::ByMinimum;
    int genotype_every = 10;         // genotypes.csv sampling interval
    int exclusion_threshold = 50;

    std::size_t run_count() const;
    /// Fully determined config of run `index`.
    SimConfig run_config(std::size_t index) const;
};

/// Throws ConfigError on unknown keys, unparsable values or violated
/// constraints (checked for every run in the sweep).
ExperimentSpec parse_config(std::string_view text);
ExperimentSpec load_config(const std::filesystem::path& path);

struct RunResult {
    RunSummary summary;
    std::vector<StepRecord> records;
    std::vector<std::int64_t> young_deaths;
    std::vector<std::int64_t> all_deaths;
};

/// Runs one configuration. With a non-empty `dir`, writes timeseries.csv and
/// genotypes.csv there.
RunResult run_single(const SimConfig& config, const ExperimentSpec& spec, const std::filesystem::path& dir = {});

/// Every run of the spec, `jobs` at a time. Writes run_NNNN/ directories and
/// summary.csv (in run order) under `out`.
std::vector<RunSummary> run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out, unsigned jobs = 0);

/// Six significant digits, the format of every float column.
std::string format_number(double v);

inline constexpr std::string_view kTimeseriesHeader =
    "step,population,births,deaths,mean_surplus,mean_len,max_len,unique_genotypes,no_x_count,modal_program,"
    "modal_count";
inline constexpr std::string_view kGenotypesHeader = "step,program,count";
inline constexpr std::string_view kSummaryHeader =
    "run_id,seed,compute_capacity,infertility,birth_cost,mu,mutation_mode,predicted_K,steady_mean_pop,realized_K,"
    "viability_fraction,steady_cv";

std::string timeseries_row(const StepRecord& r);
std::string summary_row(std::size_t run_id, const RunSummary& s);
void write_summary(const std::filesystem::path& file, std::span<const RunSummary> rows);

struct Preset {
    std::string_view name;
    std::string_view text;
};

/// Experiment presets shipped with the tool.
std::span<const Preset> presets();
const Preset* find_preset(std::string_view name);

}  // namespace gpabm
