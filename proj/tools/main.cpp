#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

using driftguard::cli::RunConfig;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> hazard;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--config", options.config_path, "run configuration file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", options.out_dir, "output directory")->required();
    cmd->add_option("--seed", options.seed,
                    "seed override (wins over the config file)");
    cmd->add_option("--hazard", options.hazard,
                    "detector hazard override (wins over the config file)");
}

// Precedence: built-in defaults < config file < flags.
RunConfig resolve(const CommonOptions& options) {
    RunConfig config;
    if (!options.config_path.empty()) {
        config = driftguard::cli::load_run_config(options.config_path);
    }
    if (options.seed) config.seed = *options.seed;
    if (options.hazard) config.detector.hazard = *options.hazard;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk-calibrated streaming anomaly detection"};
    app.require_subcommand(1);

    CommonOptions detect_options;
    CLI::App* detect = app.add_subcommand(
        "detect", "run the detector over the test segment");
    add_common(detect, detect_options);

    CommonOptions eval_options;
    bool debug_oracle = false;
    CLI::App* eval = app.add_subcommand(
        "eval", "evaluate the detector and baselines on the test segment");
    add_common(eval, eval_options);
    eval->add_flag("--debug-oracle", debug_oracle,
                   "also score a label-reading oracle (debug aid)");

    CommonOptions tune_options;
    CLI::App* tune = app.add_subcommand(
        "tune", "grid-search hazard and prior settings on validation");
    add_common(tune, tune_options);

    CommonOptions synth_options;
    CLI::App* synth =
        app.add_subcommand("synth", "write a synthetic labeled stream");
    add_common(synth, synth_options);

    double slo = 0.999;
    double period_minutes = 43200.0;
    double cost_fp = 1.0;
    double cost_fn = 10.0;
    double base_rate = 0.01;
    std::string budget_out;
    CLI::App* budget = app.add_subcommand(
        "budget", "translate an SLO and costs into an alert threshold");
    budget->add_option("--slo", slo, "availability objective in (0,1]");
    budget->add_option("--period-minutes", period_minutes, "budget period");
    budget->add_option("--cost-fp", cost_fp, "minutes per false alert");
    budget->add_option("--cost-fn", cost_fn, "minutes per missed incident");
    budget->add_option("--base-rate", base_rate, "prior incident probability");
    budget->add_option("--out", budget_out, "directory for budget.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) {
            return driftguard::cli::cmd_detect(resolve(detect_options),
                                               detect_options.out_dir);
        }
        if (eval->parsed()) {
            return driftguard::cli::cmd_eval(resolve(eval_options),
                                             eval_options.out_dir, debug_oracle);
        }
        if (tune->parsed()) {
            return driftguard::cli::cmd_tune(resolve(tune_options),
                                             tune_options.out_dir);
        }
        if (synth->parsed()) {
            RunConfig config = resolve(synth_options);
            if (!config.stream.synthetic) {
                config.stream.synthetic = driftguard::SyntheticConfig{};
            }
            return driftguard::cli::cmd_synth(config, synth_options.out_dir);
        }
        if (budget->parsed()) {
            return driftguard::cli::cmd_budget(
                slo, period_minutes, cost_fp, cost_fn, base_rate,
                budget_out.empty() ? std::nullopt
                                   : std::make_optional(budget_out));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
