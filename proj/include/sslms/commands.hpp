// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the `sslms` executable. They take parsed options and
// streams so they can be driven from tests without spawning a process.

#ifndef SSLMS_COMMANDS_HPP
#define SSLMS_COMMANDS_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sslms/simulation.hpp"

namespace sslms {

inline constexpr const char *tool_version = "0.1.0";

// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,          // bad flags or malformed config syntax
    exit_runtime = 3,        // every trial of some algorithm diverged, or a failed check
    exit_io = 4,             // missing config file or unwritable output
    exit_invalid_config = 5, // config parsed but violates a parameter invariant
};

inline constexpr const char *csv_header = "algorithm,iteration,mse_db,trials_diverged";

struct RunOptions {
    std::optional<std::filesystem::path> config_path; // built-in defaults when empty
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> iterations;
    std::optional<double> snr_db;
    std::vector<std::string> algorithms; // empty keeps the config's list
    std::filesystem::path out = "results.csv";
    std::optional<std::filesystem::path> manifest; // defaults to <out>.manifest
    unsigned threads = 0;
};

struct RunManifest {
    std::string config_path;
    SimConfig config;
    std::string output_path;
    std::string tool_version;
    unsigned threads = 0;
    std::chrono::system_clock::time_point started;
    std::chrono::system_clock::time_point finished;
};

// Applies command-line overrides on top of the file (or default) config and validates the result.
SimConfig resolve_config(const RunOptions &options);

// Rows sorted by (algorithm, iteration); iterations count from 1 to n_iterations. Curves with
// no completed trial emit "nan" for mse_db.
void write_curves_csv(std::ostream &os, std::vector<LearningCurve> curves, std::size_t n_iterations);

void write_manifest(std::ostream &os, const RunManifest &manifest);

int cmd_run(const RunOptions &options, std::ostream &log, std::ostream &err);

struct ValidateNoiseOptions {
    AlphaStableParams params{1.2, 0.0, 1.0, 0.0};
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    double tolerance = 0.02;
    std::vector<double> grid{0.1, 0.5, 1.0, 2.0};
};

struct NoiseValidation {
    std::vector<CfCheckRow> rows;
    double max_error = 0.0;
    bool passed = false;
};

NoiseValidation validate_noise(const ValidateNoiseOptions &options);

int cmd_validate_noise(const ValidateNoiseOptions &options, std::ostream &out, std::ostream &err);

} // namespace sslms

#endif
