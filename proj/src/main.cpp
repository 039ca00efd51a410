// casimir-oqs: Casimir force between two absorbing slabs in one dimension,
// with the slab medium damped by an internal oscillator bath.  Subcommands
// compute the force along independently checkable routes, sweep one
// parameter, tabulate the optical response, or run the invariant suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "cli_run.hpp"

namespace {

constexpr const char* kDescription =
    "casimir-oqs -- Casimir force between two absorbing slabs (1+1 dimensions).\n"
    "\n"
    "Units: every input is expressed in units of one arbitrary reference\n"
    "frequency and the matching length 1/frequency (the wave speed is 1);\n"
    "forces come out per unit area in those same units.  The tool never\n"
    "converts units.\n"
    "\n"
    "Configuration: flat `section.key = value` lines (see --set for the key\n"
    "names); every key has a default, a config file overrides defaults, and\n"
    "--set overrides both.  Output is CSV (force, sweep, epsilon, chi) or a\n"
    "check report (verify), always preceded by the fully resolved\n"
    "configuration as '#' comments.\n"
    "\n"
    "Exit codes: 0 success, 2 configuration error, 3 numerical failure,\n"
    "4 verification failure.";

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    int jobs = 1;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path,
                    "Configuration file of `section.key = value` lines");
    sub->add_option("--set", args.sets,
                    "Override one key, e.g. --set medium.gamma0=0.2 (repeatable)")
        ->type_name("KEY=VALUE");
    sub->add_option("--out", args.out_path, "Write the output to FILE instead of stdout")
        ->type_name("FILE");
    sub->add_option("--jobs", args.jobs, "Concurrent sweep points (sweep only)")
        ->check(CLI::Range(1, 64));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{kDescription};
    app.require_subcommand(1);
    CommonArgs args;
    add_common(app.add_subcommand(
                   "force", "Force along the configured route(s) (run.route, default all)"),
               args);
    add_common(app.add_subcommand(
                   "sweep", "Force along a grid of one parameter (sweep.* keys)"),
               args);
    add_common(app.add_subcommand(
                   "epsilon", "Permittivity and refractive index table (epsilon.* keys)"),
               args);
    add_common(app.add_subcommand(
                   "chi", "Time-domain susceptibility table (chi.* keys)"),
               args);
    add_common(app.add_subcommand(
                   "verify", "Run every library invariant against the configuration"),
               args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();

    casimir_cli::RunConfig cfg = casimir_cli::default_run_config();
    try {
        if (!args.config_path.empty()) {
            std::ifstream in(args.config_path);
            if (!in)
                throw casimir_cli::ConfigError("--config",
                                               "cannot read \"" + args.config_path + "\"");
            std::ostringstream text;
            text << in.rdbuf();
            casimir_cli::apply_config_text(cfg, text.str());
        }
        for (const std::string& set : args.sets) {
            const std::size_t eq = set.find('=');
            if (eq == std::string::npos)
                throw casimir_cli::ConfigError("--set",
                                               "expected KEY=VALUE, got \"" + set + "\"");
            casimir_cli::apply_assignment(cfg, set.substr(0, eq), set.substr(eq + 1));
        }
        casimir_cli::validate_run_config(cfg, subcommand);
    } catch (const casimir_cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!args.out_path.empty()) {
        file.open(args.out_path, std::ios::trunc);
        if (!file) {
            std::cerr << "config error: --out: cannot write \"" << args.out_path << "\"\n";
            return 2;
        }
        out = &file;
    }

    try {
        if (subcommand == "force") return casimir_cli::run_force(cfg, *out);
        if (subcommand == "sweep") return casimir_cli::run_sweep(cfg, *out, args.jobs);
        if (subcommand == "epsilon") return casimir_cli::run_epsilon(cfg, *out);
        if (subcommand == "chi") return casimir_cli::run_chi(cfg, *out);
        if (subcommand == "verify") return casimir_cli::run_verify(cfg, *out);
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
