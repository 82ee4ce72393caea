// Command-line front end: solve / verify / sweep / export-plot.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fkpp/errors.hpp"
#include "fkpp/runner.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    double tol_c = -1.0;
    double tol_ode = -1.0;
    int samples = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path,
                                "Problem configuration file");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--tol-c", args.tol_c, "Bisection tolerance on c");
    cmd->add_option("--tol-ode", args.tol_ode, "Integrator relative tolerance");
    cmd->add_option("--samples", args.samples, "Profile sample count");
}

fkpp::RunConfig load(const CommonArgs& args) {
    fkpp::RunConfig cfg = args.config_path.empty()
                              ? fkpp::RunConfig{}
                              : fkpp::parse_config_file(args.config_path);
    if (args.tol_c > 0.0) cfg.tol_c = args.tol_c;
    if (args.tol_ode > 0.0) cfg.tol_ode = args.tol_ode;
    if (args.samples > 0) cfg.samples = args.samples;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Travelling-wave solver for bistable reaction-diffusion "
                 "problems with p-Laplacian-type diffusion"};
    app.require_subcommand(1);

    CommonArgs solve_args, verify_args, sweep_args, plot_args;
    bool quick = false;

    auto* solve = app.add_subcommand("solve", "Compute c* and the wave profile");
    add_common(solve, solve_args, true);

    auto* verify = app.add_subcommand(
        "verify", "Run the executable property suite and write report.json");
    add_common(verify, verify_args, false);
    verify->add_flag("--quick", quick, "Only the built-in manufactured matrix");

    auto* sweep = app.add_subcommand("sweep", "Solve a parameter grid");
    add_common(sweep, sweep_args, true);

    auto* plot = app.add_subcommand("export-plot",
                                    "Emit xi-u and r-y tables for plotting");
    add_common(plot, plot_args, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const auto cfg = load(solve_args);
            return fkpp::cli::run_solve(cfg, cfg.out_dir);
        }
        if (verify->parsed()) {
            const auto cfg = load(verify_args);
            return fkpp::cli::run_verify(cfg, cfg.out_dir, quick);
        }
        if (sweep->parsed()) {
            const auto cfg = load(sweep_args);
            return fkpp::cli::run_sweep(cfg, cfg.out_dir);
        }
        if (plot->parsed()) {
            const auto cfg = load(plot_args);
            return fkpp::cli::run_export_plot(cfg, cfg.out_dir);
        }
    } catch (const fkpp::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return fkpp::cli::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return fkpp::cli::kNonConvergence;
    }
    return 0;
}
