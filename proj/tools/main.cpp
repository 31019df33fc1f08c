// Command-line driver: SNR sweeps to CSV/JSON, the self-validation suite,
// and a diversity/slope summary table. All dB-to-linear conversion happens
// at this boundary or inside the sweep runner; library code takes linear SNR.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "irsnoma/config.hpp"
#include "irsnoma/sweep.hpp"
#include "irsnoma/validation.hpp"

namespace {

int run_sweep_cmd(const std::string& config_path) {
    const irsnoma::cli::AppConfig cfg = irsnoma::cli::parse_config_file(config_path);
    const auto result = irsnoma::sweep::run_sweep(cfg);
    for (const auto& path : irsnoma::sweep::write_outputs(result, cfg.sweep.output_base))
        std::cout << "wrote " << path << "\n";
    std::cout << result.points.size() << " rows\n";
    return 0;
}

int run_validate_cmd(const std::string& config_path, const std::string& profile,
                     std::uint64_t seed, unsigned workers, double corrupt_xi) {
    const irsnoma::cli::AppConfig cfg = irsnoma::cli::parse_config_file(config_path);
    cfg.params.validate();

    irsnoma::validation::ValidationOptions opts;
    opts.profile = profile == "quick" ? irsnoma::validation::Profile::Quick
                                      : irsnoma::validation::Profile::Full;
    opts.seed = seed;
    opts.workers = workers;
    opts.corrupt_xi = corrupt_xi;

    const auto report = irsnoma::validation::run_validation(cfg.params, opts);
    for (const auto& c : report.checks)
        std::fprintf(stderr, "check %2d %-28s %s  %s\n", c.id, c.name.c_str(),
                     c.pass ? "PASS" : "FAIL", c.detail.c_str());
    std::cout << irsnoma::validation::report_to_json(report, opts);
    return report.all_pass() ? 0 : 1;
}

int run_table_cmd(const std::string& config_path) {
    const irsnoma::cli::AppConfig cfg = irsnoma::cli::parse_config_file(config_path);
    cfg.params.validate();
    std::cout << irsnoma::sweep::render_table(cfg.params, cfg.sweep.quad_order);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and ergodic-rate evaluation for a surface-aided two-user network"};
    app.require_subcommand(1);

    std::string sweep_config, validate_config, table_config;
    std::string profile = "full";
    std::uint64_t seed = 20240915;
    unsigned workers = 1;
    double corrupt_xi = 0.0;

    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run the configured SNR sweep and write CSV and JSON tables");
    sweep_cmd->add_option("config", sweep_config, "Configuration file")->required();

    auto* validate_cmd = app.add_subcommand(
        "validate", "Run the twelve-check self-validation suite against the config's parameters");
    validate_cmd->add_option("config", validate_config, "Configuration file")->required();
    validate_cmd->add_option("--profile", profile, "Monte Carlo sizing: full or quick")
        ->check(CLI::IsMember({"full", "quick"}))
        ->capture_default_str();
    validate_cmd->add_option("--seed", seed, "Base Monte Carlo seed")->capture_default_str();
    validate_cmd->add_option("--workers", workers, "Worker threads (0 = environment/hardware)")
        ->capture_default_str();
    validate_cmd
        ->add_option("--corrupt-xi", corrupt_xi,
                     "Negative control: perturb the series-route fluctuation parameter")
        ->capture_default_str();

    auto* table_cmd =
        app.add_subcommand("table", "Print the diversity-order and rate-slope summary table");
    table_cmd->add_option("config", table_config, "Configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_config);
        if (validate_cmd->parsed())
            return run_validate_cmd(validate_config, profile, seed, workers, corrupt_xi);
        if (table_cmd->parsed()) return run_table_cmd(table_config);
    } catch (const irsnoma::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
