// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration files: flat sectioned key = value text.
//
//   [channel]   n_taps, sparsity, input (gaussian | binary)
//   [noise]     alpha, beta, gamma, delta, enabled
//   [run]       iterations, trials, snr_db, seed, snr_mode (scale_noise | scale_input)
//   [algorithm.NAME]  mu, rho_za, rho_rza, eps_rza, rho_rl1, delta_rl1, rho_lp, eps_lp, p
//
// '#' and ';' start comments. Keys left out keep their defaults. Algorithms run in file order.

#ifndef SSLMS_CONFIG_HPP
#define SSLMS_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sslms/simulation.hpp"

namespace sslms {

enum class ConfigErrorKind { missing_file, syntax, invalid_value };

class ConfigError : public std::runtime_error {
public:
    ConfigError(ConfigErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

SimConfig parse_config(const std::filesystem::path &path);

// Parses config text; `origin` names the source in error messages.
SimConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");

// Writes `config` in the file format above; parse_config_text() reads it back unchanged.
void write_config(std::ostream &os, const SimConfig &config);

// Default configuration: all ten algorithms with the reference hyperparameters.
SimConfig default_config();
std::string template_config();

// Locale-independent shortest round-trip decimal form.
std::string format_double(double value);

} // namespace sslms

#endif
