#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "levysim/config.hpp"
#include "levysim/experiment.hpp"
#include "levysim/plot_data.hpp"
#include "levytype/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"levysim: simulate Levy-type processes and run the diagnostic suites"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool check_only = false;
    app.add_option("--config", config_path, "experiment config (JSON)")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "root seed, overrides the config");
    app.add_option("--threads", threads, "worker threads (speed only)")->check(CLI::PositiveNumber);
    app.add_flag("--check", check_only, "validate the config and exit");

    std::string plot_dir;
    auto* plot = app.add_subcommand("plot-data", "write tidy plotting CSVs for a completed run");
    plot->add_option("dir", plot_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plot->parsed()) {
            for (const auto& f : levysim::emit_plot_data(plot_dir)) std::cout << f << '\n';
            return 0;
        }
        if (config_path.empty()) throw levysim::ConfigError("--config is required");
        auto config = levysim::load_config(config_path);
        if (seed) config.seed = *seed;
        if (check_only) {
            std::cout << "config OK: scenario " << levysim::to_string(config.scenario) << ", seed " << config.seed
                      << '\n';
            return 0;
        }
        if (out_dir.empty()) throw levysim::ConfigError("--out is required");
        const auto summary = levysim::run_experiment(config, out_dir, threads);
        for (const auto& f : summary.files) std::cout << "wrote " << f << '\n';
        if (summary.failed_checks.empty()) {
            std::cout << "all diagnostics passed\n";
        } else {
            std::cout << "diagnostics not passing:";
            for (const auto& c : summary.failed_checks) std::cout << ' ' << c;
            std::cout << '\n';
        }
        return 0;
    } catch (const levysim::ConfigError& e) {
        std::cerr << "levysim: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const levytype::Error& e) {
        std::cerr << "levysim: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "levysim: " << e.what() << '\n';
        return 1;
    }
}
