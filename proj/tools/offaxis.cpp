#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "offaxis/config.hpp"
#include "offaxis/errors.hpp"
#include "offaxis/run.hpp"

using namespace offaxis;

int main(int argc, char** argv) {
    CLI::App app{"Off-axis vortex propagation in double-Raman-gain media"};
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::string> experiment;
    std::optional<int> steps;
    bool quiet = false;
    app.add_option("--config", config_path, "configuration file (key = value with [section] headers)")->required();
    app.add_option("--output", output, "output directory (overrides [run] output_dir)");
    app.add_option("--experiment", experiment,
                   "propagate | exchange | oracle-compare | detect | dispersion | sweep (overrides [run] experiment)");
    app.add_option("--steps", steps, "RK4 steps for oracle-compare (overrides [oracle] steps)");
    app.add_flag("--quiet", quiet, "suppress the summary on stdout");
    app.set_version_flag("--version", OFFAXIS_VERSION);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitValidation;
    }

    try {
        cli::RunConfig cfg = cli::load_config(config_path);
        if (output) cfg.output_dir = *output;
        if (experiment) {
            const auto e = cli::experiment_from_string(*experiment);
            if (!e) {
                throw ValidationError("--experiment: unknown experiment '" + *experiment + "'");
            }
            cfg.experiment = *e;
        }
        if (steps) cfg.oracle.steps = *steps;
        cfg.quiet = cfg.quiet || quiet;
        cfg.validate();

        const cli::RunResult result = cli::run(cfg);
        if (!cfg.quiet) {
            for (const auto& line : result.log) {
                std::cout << line << '\n';
            }
            std::cout << "wrote " << result.manifest.files.size() << " files to " << cfg.output_dir << '\n';
        } else if (result.exit_code != cli::kExitOk) {
            for (const auto& line : result.log) {
                std::cerr << line << '\n';
            }
        }
        return result.exit_code;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitValidation;
    }
}
