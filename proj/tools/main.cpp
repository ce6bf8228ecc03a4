#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plab/config.hpp"
#include "plab/propagator.hpp"
#include "plab/runner.hpp"
#include "plab/version.hpp"

namespace {

int run_mode(plab::config::Mode mode, const std::string& config_path,
             const std::string& out_dir, int threads) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    const auto parsed = plab::config::parse_config(buf.str());
    if (!parsed.ok()) {
        std::cerr << "error: invalid config '" << config_path << "':\n";
        for (const auto& e : parsed.errors)
            std::cerr << "  " << e.path << ": " << e.message << "\n";
        return 2;
    }
    if (parsed.config->mode != mode) {
        std::cerr << "error: config declares mode '"
                  << plab::config::mode_name(parsed.config->mode)
                  << "' but the subcommand is '" << plab::config::mode_name(mode)
                  << "'\n";
        return 2;
    }

    plab::propagator::set_thread_count(threads);
    try {
        const auto outcome = plab::runner::run(*parsed.config, out_dir);
        for (const auto& c : outcome.manifest.checks)
            std::cout << (c.passed ? "PASS" : (c.hard ? "FAIL" : "WARN")) << "  "
                      << c.name << "  value=" << c.value
                      << " threshold=" << c.threshold << "\n";
        for (const auto& w : outcome.manifest.warnings)
            std::cout << "note: " << w << "\n";
        std::cout << "artifacts written to " << outcome.output_dir << "\n";
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error [" << plab::config::mode_name(mode)
                  << " --config " << config_path << "]: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polariton-lab: Morris-Shore reduction and stationary-light "
                 "polariton simulation"};
    app.set_version_flag("--version", plab::kToolVersion);
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::string out;
        int threads = 1;
    };

    auto add_mode = [&](const std::string& name, const std::string& desc) {
        auto* cmd = app.add_subcommand(name, desc);
        auto args = std::make_shared<Args>();
        cmd->add_option("--config", args->config, "configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", args->out, "output directory (overrides config)");
        cmd->add_option("--threads", args->threads, "worker threads for mode loops")
            ->check(CLI::Range(1, 256));
        return std::make_pair(cmd, args);
    };

    auto [transform_cmd, transform_args] =
        add_mode("transform", "Morris-Shore decomposition of a coupling matrix");
    auto [dispersion_cmd, dispersion_args] =
        add_mode("dispersion", "eigenvalue branches and dispersion coefficients");
    auto [propagate_cmd, propagate_args] =
        add_mode("propagate", "full time-domain evolution of a dark-state pulse");
    auto [scenario_cmd, scenario_args] =
        add_mode("scenario", "storage/retrieval protocols with control schedules");

    CLI11_PARSE(app, argc, argv);

    using plab::config::Mode;
    if (transform_cmd->parsed())
        return run_mode(Mode::transform, transform_args->config, transform_args->out,
                        transform_args->threads);
    if (dispersion_cmd->parsed())
        return run_mode(Mode::dispersion, dispersion_args->config,
                        dispersion_args->out, dispersion_args->threads);
    if (propagate_cmd->parsed())
        return run_mode(Mode::propagate, propagate_args->config, propagate_args->out,
                        propagate_args->threads);
    if (scenario_cmd->parsed())
        return run_mode(Mode::scenario, scenario_args->config, scenario_args->out,
                        scenario_args->threads);
    return 2;
}
