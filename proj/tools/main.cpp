#include <CLI11.hpp>
#include <iostream>

#include "photonlink/experiment.hpp"

namespace expr = photonlink::experiment;

int main(int argc, char** argv)
{
    CLI::App app{"photonlink: photonic-link / transmon co-simulation runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* run_cmd = app.add_subcommand("run", "run an experiment config");
    run_cmd->add_option("config", config_path, "experiment config (JSON)")
        ->required();
    run_cmd->add_option("--out", out_dir, "output directory override");
    run_cmd->add_option("--seed", seed, "seed override")
        ->each([&](const std::string&) { seed_set = true; });

    auto* validate_cmd =
        app.add_subcommand("validate", "check a config without running");
    validate_cmd->add_option("config", config_path, "experiment config (JSON)")
        ->required();

    app.add_subcommand("list-experiments", "print known experiment names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list-experiments")) {
            for (const auto& name : expr::experiment_names()) {
                std::cout << name << "\n";
            }
            return 0;
        }

        expr::ExperimentConfig cfg;
        try {
            cfg = expr::load_config(config_path);
        } catch (const photonlink::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }

        if (app.got_subcommand("validate")) {
            const auto report = expr::validate(cfg);
            for (const auto& line : report) {
                std::cout << line << "\n";
            }
            return report.empty() ? 0 : 2;
        }

        if (seed_set) cfg.seed = seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        const auto report = expr::validate(cfg);
        if (!report.empty()) {
            for (const auto& line : report) {
                std::cerr << "config error: " << line << "\n";
            }
            return 2;
        }
        const auto result = expr::run(cfg);
        for (const auto& path : expr::write_result(cfg, result)) {
            std::cout << path.string() << "\n";
        }
        return 0;
    } catch (const photonlink::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
