#include "gpabm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace gpabm {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    for (;;) {
        const auto comma = s.find(',');
        out.emplace_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw ConfigError("bad value '" + std::string(v) + "' for " + std::string(key));
    }
    return out;
}

bool parse_switch(std::string_view key, std::string_view v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("bad value '" + std::string(v) + "' for " + std::string(key) + " (expected on/off)");
}

using Setter = std::function<void(SimConfig&, std::string_view key, std::string_view value)>;

template <class T>
Setter field(T SimConfig::*member) {
    return [member](SimConfig& c, std::string_view key, std::string_view v) {
        if constexpr (std::is_same_v<T, bool>) {
            c.*member = parse_switch(key, v);
        } else {
            c.*member = parse_number<T>(key, v);
        }
    };
}

const std::map<std::string, Setter, std::less<>>& sim_keys() {
    static const std::map<std::string, Setter, std::less<>> keys = {
        {"compute_capacity", field(&SimConfig::compute_capacity)},
        {"infertility", field(&SimConfig::infertility)},
        {"birth_cost", field(&SimConfig::birth_cost)},
        {"puberty", field(&SimConfig::puberty)},
        {"metabolism", field(&SimConfig::metabolism)},
        {"mu", field(&SimConfig::mu)},
        {"mutation_mode",
         [](SimConfig& c, std::string_view key, std::string_view v) {
             if (v == "per_program") {
                 c.mutation_mode = MutationMode::PerProgram;
             } else if (v == "per_instruction") {
                 c.mutation_mode = MutationMode::PerInstruction;
             } else {
                 throw ConfigError("bad value '" + std::string(v) + "' for " + std::string(key));
             }
         }},
        {"initial_population", field(&SimConfig::initial_population)},
        {"initial_endowment", field(&SimConfig::initial_endowment)},
        {"max_steps", field(&SimConfig::max_steps)},
        {"width", field(&SimConfig::width)},
        {"height", field(&SimConfig::height)},
        {"capacity", field(&SimConfig::capacity)},
        {"regrowth", field(&SimConfig::regrowth)},
        {"vision", field(&SimConfig::vision)},
        {"idle_forage", field(&SimConfig::idle_forage)},
        {"reset_registers", field(&SimConfig::reset_registers)},
    };
    return keys;
}

void validate_run(const SimConfig& c) {
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::size_t ExperimentSpec::run_count() const {
    std::size_t n = seeds.size();
    for (const auto& [key, values] : sweeps) n *= values.size();
    return n;
}

SimConfig ExperimentSpec::run_config(std::size_t index) const {
    SimConfig c = base;
    c.seed = seeds[index % seeds.size()];
    index /= seeds.size();
    for (auto it = sweeps.rbegin(); it != sweeps.rend(); ++it) {
        const auto& [key, values] = *it;
        sim_keys().find(key)->second(c, key, values[index % values.size()]);
        index /= values.size();
    }
    return c;
}

ExperimentSpec parse_config(std::string_view text) {
    ExperimentSpec spec;
    std::map<std::string, int, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (seen[key]++ > 0) throw ConfigError("duplicate key " + key);

        if (auto it = sim_keys().find(key); it != sim_keys().end()) {
            auto values = split_list(value);
            for (const auto& v : values) {
                SimConfig probe;
                it->second(probe, key, v);
            }
            if (values.size() == 1) {
                it->second(spec.base, key, values.front());
            } else {
                spec.sweeps.emplace_back(key, std::move(values));
            }
        } else if (key == "seed" || key == "seeds") {
            spec.seeds.clear();
            for (const auto& v : split_list(value)) spec.seeds.push_back(parse_number<std::uint64_t>(key, v));
        } else if (key == "founders") {
            for (const auto& v : split_list(value)) {
                try {
                    spec.base.founders.push_back(parse_genome(v));
                } catch (const GenomeError& e) {
                    throw ConfigError("founders: " + std::string(e.what()));
                }
            }
        } else if (key == "output_dir") {
            spec.output_dir = std::string(value);
        } else if (key == "steady_window") {
            spec.steady_window = parse_number<double>(key, value);
            if (!(spec.steady_window > 0.0 && spec.steady_window <= 1.0)) {
                throw ConfigError("steady_window must be in (0, 1]");
            }
        } else if (key == "viability_horizon") {
            spec.viability_horizon = parse_number<double>(key, value);
            if (!(spec.viability_horizon > 0.0 && spec.viability_horizon <= 1.0)) {
                throw ConfigError("viability_horizon must be in (0, 1]");
            }
        } else if (key == "viability_mode") {
            if (value == "by_minimum") {
                spec.viability_mode = ViabilityMode::ByMinimum;
            } else if (value == "eventually") {
                spec.viability_mode = ViabilityMode::Eventually;
            } else {
                throw ConfigError("bad value '" + std::string(value) + "' for viability_mode");
            }
        } else if (key == "genotype_every") {
            spec.genotype_every = parse_number<int>(key, value);
            if (spec.genotype_every < 1) throw ConfigError("genotype_every must be >= 1");
        } else if (key == "exclusion_threshold") {
            spec.exclusion_threshold = parse_number<int>(key, value);
            if (spec.exclusion_threshold < 1) throw ConfigError("exclusion_threshold must be >= 1");
        } else {
            throw ConfigError("unknown key " + key);
        }
    }
    if (spec.seeds.empty()) throw ConfigError("seed list is empty");
    for (std::size_t i = 0; i < spec.run_count(); ++i) validate_run(spec.run_config(i));
    return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (const Preset* p = find_preset(path.string())) return parse_config(p->text);
        throw ConfigError("cannot read config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string timeseries_row(const StepRecord& r) {
    std::string s;
    s += std::to_string(r.step) + ',' + std::to_string(r.population) + ',' + std::to_string(r.births) + ',' +
         std::to_string(r.deaths) + ',' + format_number(r.mean_surplus) + ',' + format_number(r.mean_length) + ',' +
         std::to_string(r.max_length) + ',' + std::to_string(r.unique_genotypes) + ',' +
         std::to_string(r.no_x_count) + ',' + r.modal_program + ',' + std::to_string(r.modal_count);
    return s;
}

std::string summary_row(std::size_t run_id, const RunSummary& s) {
    const SimConfig& c = s.config;
    return std::to_string(run_id) + ',' + std::to_string(c.seed) + ',' + std::to_string(c.compute_capacity) + ',' +
           format_number(c.infertility) + ',' + format_number(c.birth_cost) + ',' + format_number(c.mu) + ',' +
           to_string(c.mutation_mode) + ',' + std::to_string(s.predicted_K) + ',' +
           format_number(s.steady_mean_population) + ',' + format_number(s.realized_K) + ',' +
           format_number(s.viability_fraction) + ',' + format_number(s.steady_cv);
}

namespace {

std::ofstream open_csv(const std::filesystem::path& file, std::string_view header) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + file.string());
    out << header << '\n';
    return out;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

void write_summary(const std::filesystem::path& file, std::span<const RunSummary> rows) {
    std::ofstream out = open_csv(file, kSummaryHeader);
    for (std::size_t i = 0; i < rows.size(); ++i) out << summary_row(i, rows[i]) << '\n';
    if (!out) throw IoError("write failed: " + file.string());
}

RunResult run_single(const SimConfig& config, const ExperimentSpec& spec, const std::filesystem::path& dir) {
    RunRecorder recorder;
    ViabilityTracker viability(config.initial_population, spec.viability_horizon);

    std::ofstream timeseries;
    std::ofstream genotypes;
    if (!dir.empty()) {
        ensure_dir(dir);
        timeseries = open_csv(dir / "timeseries.csv", kTimeseriesHeader);
        genotypes = open_csv(dir / "genotypes.csv", kGenotypesHeader);
        recorder.on_census = [&](const Census& c) {
            timeseries << timeseries_row(c.step) << '\n';
            if (c.step.step % spec.genotype_every != 0) return;
            for (const auto& g : c.genotypes) genotypes << g.step << ',' << g.program << ',' << g.count << '\n';
        };
    }

    std::vector<Observer*> observers{&recorder, &viability};
    run(config, observers);
    if (!dir.empty() && (!timeseries.flush() || !genotypes.flush())) {
        throw IoError("write failed under " + dir.string());
    }

    RunResult result;
    result.summary = summarize(config, recorder.population(), spec.steady_window,
                               viability.fraction(spec.viability_mode));
    result.records = recorder.records();
    result.young_deaths = recorder.young_deaths();
    result.all_deaths = recorder.all_deaths();
    return result;
}

std::vector<RunSummary> run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out, unsigned jobs) {
    ensure_dir(out);
    const std::size_t n = spec.run_count();
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));

    std::vector<RunSummary> summaries(n);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                char name[32];
                std::snprintf(name, sizeof name, "run_%04zu", i);
                summaries[i] = run_single(spec.run_config(i), spec, out / name).summary;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    write_summary(out / "summary.csv", summaries);
    return summaries;
}

}  // namespace gpabm
