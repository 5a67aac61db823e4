#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "urel/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact Riemann solver and Glimm scheme for the ultra-relativistic Euler equations"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::string out = ".";
        std::optional<std::uint64_t> seed;
    };
    Args args;
    const std::pair<const char*, const char*> commands[] = {
        {"riemann", "solve one Riemann problem and sample its fan"},
        {"glimm", "run the Glimm scheme with F/L monitors"},
        {"curves", "tabulate shock and rarefaction curves"},
        {"interactions", "randomized check of the interaction estimates"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", args.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", args.out, "output directory")->capture_default_str();
        sub->add_option("--seed", args.seed, "override the sampling / sweep seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : urel::cli::kConfigError;
    }

    const auto command = urel::cli::parse_command(app.get_subcommands().front()->get_name());
    return urel::cli::run_command(command, args.config, args.out, args.seed, std::cerr);
}
