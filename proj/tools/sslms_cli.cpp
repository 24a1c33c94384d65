// SPDX-License-Identifier: Apache-2.0
//
// sslms: run sparse (sign-)LMS Monte-Carlo experiments and validate the noise sampler.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sslms/commands.hpp"
#include "sslms/config.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Sparse sign-LMS channel estimation under alpha-stable noise"};
    app.set_version_flag("--version", sslms::tool_version);
    app.require_subcommand(1);

    sslms::RunOptions run;
    std::string config_path;
    std::string manifest_path;
    std::string out_path = run.out.string();
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t iterations = 0;
    double snr_db = 0.0;

    auto *run_cmd = app.add_subcommand("run", "Run a Monte-Carlo experiment and write learning curves as CSV");
    auto *config_opt = run_cmd->add_option("--config", config_path, "Configuration file");
    auto *seed_opt = run_cmd->add_option("--seed", seed, "Master seed (overrides config)");
    auto *trials_opt = run_cmd->add_option("--trials", trials, "Monte-Carlo trials (overrides config)");
    auto *iter_opt = run_cmd->add_option("--iterations", iterations, "Iterations per trial (overrides config)");
    auto *snr_opt = run_cmd->add_option("--snr", snr_db, "Received SNR in dB (overrides config)");
    run_cmd->add_option("--algorithms", run.algorithms, "Comma-separated algorithm names")->delimiter(',');
    run_cmd->add_option("--out", out_path, "Output CSV path")->capture_default_str();
    auto *manifest_opt = run_cmd->add_option("--manifest", manifest_path, "Manifest path (default <out>.manifest)");
    run_cmd->add_option("--threads", run.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();

    sslms::ValidateNoiseOptions noise;
    auto *noise_cmd = app.add_subcommand("validate-noise", "Compare empirical and analytic characteristic functions");
    noise_cmd->add_option("--alpha", noise.params.alpha, "Characteristic exponent")->capture_default_str();
    noise_cmd->add_option("--beta", noise.params.beta, "Symmetry parameter")->capture_default_str();
    noise_cmd->add_option("--gamma", noise.params.gamma, "Dispersion")->capture_default_str();
    noise_cmd->add_option("--delta", noise.params.delta, "Location")->capture_default_str();
    noise_cmd->add_option("--samples", noise.samples, "Number of draws")->capture_default_str();
    noise_cmd->add_option("--seed", noise.seed, "Sampler seed")->capture_default_str();
    noise_cmd->add_option("--tolerance", noise.tolerance, "Pass threshold on |error|")->capture_default_str();

    auto *template_cmd = app.add_subcommand("template", "Print the default configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? sslms::exit_ok : sslms::exit_usage;
    }

    if (*run_cmd) {
        if (*config_opt)
            run.config_path = config_path;
        if (*seed_opt)
            run.seed = seed;
        if (*trials_opt)
            run.trials = trials;
        if (*iter_opt)
            run.iterations = iterations;
        if (*snr_opt)
            run.snr_db = snr_db;
        if (*manifest_opt)
            run.manifest = manifest_path;
        run.out = out_path;
        return sslms::cmd_run(run, std::cout, std::cerr);
    }
    if (*noise_cmd)
        return sslms::cmd_validate_noise(noise, std::cout, std::cerr);
    if (*template_cmd) {
        std::cout << sslms::template_config();
        return sslms::exit_ok;
    }
    return sslms::exit_usage;
}
