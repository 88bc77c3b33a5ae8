#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mlosim/config.hpp"
#include "mlosim/report_io.hpp"
#include "mlosim/simulation.hpp"
#include "mlosim/sweep.hpp"

namespace {

// --seed beats MLO_SIM_SEED beats the config file.
std::uint64_t effective_seed(const mlosim::ScenarioConfig& cfg, std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("MLO_SIM_SEED")) {
        std::string text{env};
        std::size_t consumed = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(text, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != text.size() || text.empty())
            throw mlosim::ConfigError("MLO_SIM_SEED is not an unsigned integer: '" + text + "'");
        return v;
    }
    return cfg.seed;
}

void apply_overrides(mlosim::ScenarioConfig& cfg, std::optional<std::uint64_t> seed,
                     std::optional<double> duration) {
    cfg.seed = effective_seed(cfg, seed);
    if (duration) cfg.duration_s = *duration;
    mlosim::validate_config(cfg);
}

std::string output_path(const std::string& dir, const char* file) {
    return (std::filesystem::path(dir) / file).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator of Wi-Fi multi-link channel access"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    std::string output_dir;
    std::string format = "summary";
    bool trace = false;
    std::string loads;
    std::optional<std::uint32_t> reps;

    CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and report per-BSS results");
    simulate->add_option("config", config_path, "scenario config file")->required();
    simulate->add_option("--seed", seed, "override the master seed");
    simulate->add_option("--duration", duration, "override simulated seconds");
    simulate->add_option("--output", output_dir, "directory for results.csv (and trace.csv)");
    simulate->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"summary", "csv"}));
    simulate->add_flag("--trace", trace, "write per-packet trace.csv (needs --output)");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a load sweep with replications");
    sweep->add_option("config", config_path, "scenario config file")->required();
    sweep->add_option("--loads", loads,
                      "load points, percent: '10,20,30' or per-BSS triples '90/70/10,50/70/50'")
        ->required();
    sweep->add_option("--reps", reps, "replications per point (default from config)");
    sweep->add_option("--seed", seed, "override the master seed");
    sweep->add_option("--duration", duration, "override simulated seconds per run");
    sweep->add_option("--output", output_dir, "directory for sweep.csv");
    sweep->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"summary", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        mlosim::ScenarioConfig cfg = mlosim::load_config_file(config_path);
        apply_overrides(cfg, seed, duration);

        if (simulate->parsed()) {
            if (trace && output_dir.empty())
                throw mlosim::ConfigError("--trace needs --output to receive trace.csv");
            mlosim::SimulationRun run(cfg, cfg.seed, trace);
            run.run();
            mlosim::RunReport report = run.report();
            std::cout << (format == "csv" ? mlosim::report_to_csv(report)
                                          : mlosim::report_to_summary(report));
            if (!output_dir.empty()) {
                std::filesystem::create_directories(output_dir);
                mlosim::write_text_file(output_path(output_dir, "results.csv"),
                                        mlosim::report_to_csv(report));
                if (trace) {
                    std::vector<std::string> names;
                    for (const auto& b : cfg.bss) names.push_back(b.name);
                    mlosim::write_text_file(
                        output_path(output_dir, "trace.csv"),
                        mlosim::trace_to_csv(run.stats().trace(), names));
                }
            }
        } else {
            mlosim::SweepSpec spec =
                mlosim::parse_loads(loads, reps ? *reps : cfg.replications);
            mlosim::SweepResult result = mlosim::run_sweep(cfg, spec);
            std::cout << (format == "csv" ? mlosim::sweep_to_csv(result)
                                          : mlosim::sweep_to_summary(result));
            if (!output_dir.empty()) {
                std::filesystem::create_directories(output_dir);
                mlosim::write_text_file(output_path(output_dir, "sweep.csv"),
                                        mlosim::sweep_to_csv(result));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
