// darkwell.cpp - command-line front end: simulate | sweep | wells | scenarios
#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
    using darkwell::cli::CommandOptions;

    CLI::App app{
        "darkwell - laser-suppressed tunneling in a Lambda-type double-well system"};
    app.require_subcommand(1);

    CommandOptions opts;
    const auto add_common = [&opts](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "path to a key-value config file");
        sub->add_option("--out", opts.out_path, "output CSV path (overrides the config)");
        sub->add_option("--override", opts.overrides,
                        "key=value applied after the config file (repeatable)");
        sub->add_flag("--quiet", opts.quiet, "suppress the summary on stdout");
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "integrate one trajectory and write it as CSV");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "settle a 1D/2D parameter grid and compare with the closed forms");
    CLI::App* wells = app.add_subcommand(
        "wells", "solve double-well eigenstates, splitting and Rabi overlaps");
    CLI::App* scenarios = app.add_subcommand("scenarios", "list built-in scenarios");
    for (CLI::App* sub : {simulate, sweep, wells, scenarios}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) return darkwell::cli::cmd_simulate(opts, std::cout, std::cerr);
    if (sweep->parsed()) return darkwell::cli::cmd_sweep(opts, std::cout, std::cerr);
    if (wells->parsed()) return darkwell::cli::cmd_wells(opts, std::cout, std::cerr);
    return darkwell::cli::cmd_scenarios(opts, std::cout, std::cerr);
}
