// gpabm -- command line front end: single runs, sweeps and presets.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gpabm/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2 };

std::string first_comment(std::string_view text) {
    if (!text.starts_with('#')) return {};
    auto line = text.substr(1, text.find('\n') - 1);
    while (line.starts_with(' ')) line.remove_prefix(1);
    return std::string(line);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Foraging ecosystem of linear genetically-programmed agents"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned jobs = 0;

    auto* run_cmd = app.add_subcommand("run", "Run one configuration");
    run_cmd->add_option("--config", config_path, "Config file or preset name")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default: output_dir key or .)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the RNG seed");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run every configuration and seed of a sweep");
    sweep_cmd->add_option("--config", config_path, "Config file or preset name")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory")->required();
    sweep_cmd->add_option("--jobs", jobs, "Parallel runs (default: hardware threads)");

    auto* presets_cmd = app.add_subcommand("presets", "Shipped experiment presets");
    auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
    auto* show_cmd = presets_cmd->add_subcommand("show", "Print a preset config");
    std::string preset_name;
    show_cmd->add_option("name", preset_name)->required();
    presets_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*list_cmd) {
            for (const auto& p : gpabm::presets()) std::cout << p.name << "\t" << first_comment(p.text) << "\n";
            return kOk;
        }
        if (*show_cmd) {
            const auto* p = gpabm::find_preset(preset_name);
            if (!p) throw gpabm::ConfigError("no preset named " + preset_name);
            std::cout << p->text;
            return kOk;
        }

        gpabm::ExperimentSpec spec = gpabm::load_config(config_path);
        if (*run_cmd) {
            if (spec.run_count() / spec.seeds.size() != 1 || (spec.seeds.size() != 1 && !*seed_opt)) {
                throw gpabm::ConfigError("config describes a sweep; use the sweep subcommand");
            }
            gpabm::SimConfig config = spec.run_config(0);
            if (*seed_opt) config.seed = seed;
            const std::filesystem::path dir = !out_dir.empty() ? out_dir : !spec.output_dir.empty() ? spec.output_dir : ".";
            const auto result = gpabm::run_single(config, spec, dir);
            gpabm::write_summary(dir / "summary.csv", std::span(&result.summary, 1));
            std::cout << gpabm::kSummaryHeader << "\n" << gpabm::summary_row(0, result.summary) << "\n";
        } else if (*sweep_cmd) {
            const auto rows = gpabm::run_sweep(spec, out_dir, jobs);
            std::cout << "wrote " << rows.size() << " runs to " << out_dir << "\n";
        }
    } catch (const gpabm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const gpabm::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}
