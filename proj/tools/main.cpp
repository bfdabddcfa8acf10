// Command-line front end: run a single simulation, run the convergence
// study, or execute the built-in identity checks.

#include <CLI11.hpp>

#include "sorptran/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Variational time-stepping solver for degenerate sorption-diffusion systems"};
    app.require_subcommand(1);

    sorptran::CommandOptions opts;
    std::string config_path;

    CLI::App* run = app.add_subcommand("run", "run one simulation from a config file");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    run->add_flag("--quiet", opts.quiet, "suppress progress output");

    CLI::App* converge = app.add_subcommand("converge", "run the mesh-refinement error study");
    converge->add_option("config", config_path, "config file")->required();
    converge->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    converge->add_flag("--quiet", opts.quiet, "suppress the error table");

    CLI::App* validate = app.add_subcommand("validate", "run the built-in identity checks");
    validate->add_option("--out", opts.out_dir, "directory for the check report");
    validate->add_flag("--quiet", opts.quiet, "suppress per-check output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sorptran::kExitInvalidInput;
    }

    if (run->parsed()) return sorptran::cmd_run(config_path, opts);
    if (converge->parsed()) return sorptran::cmd_converge(config_path, opts);
    if (validate->parsed()) return sorptran::cmd_validate(opts);
    return sorptran::kExitInvalidInput;
}
