// SPDX-License-Identifier: Apache-2.0

#include "sslms/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "sslms/errors.hpp"

namespace sslms {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Parser {
public:
    explicit Parser(std::string_view origin) : origin_(origin) {}

    [[noreturn]] void syntax(std::size_t line, const std::string &msg) const
    {
        throw ConfigError(ConfigErrorKind::syntax, where(line) + msg);
    }

    [[noreturn]] void invalid(std::size_t line, const std::string &msg) const
    {
        throw ConfigError(ConfigErrorKind::invalid_value, where(line) + msg);
    }

    double to_double(std::size_t line, std::string_view key, std::string_view value) const
    {
        double out = 0.0;
        const auto *end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (ec != std::errc{} || ptr != end)
            syntax(line, "'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
        return out;
    }

    std::size_t to_count(std::size_t line, std::string_view key, std::string_view value) const
    {
        long long out = 0;
        const auto *end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (ec != std::errc{} || ptr != end)
            syntax(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
        if (out < 0)
            invalid(line, "'" + std::string(key) + "' must be non-negative");
        return static_cast<std::size_t>(out);
    }

    std::uint64_t to_seed(std::size_t line, std::string_view key, std::string_view value) const
    {
        std::uint64_t out = 0;
        const auto *end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (ec != std::errc{} || ptr != end)
            syntax(line, "'" + std::string(key) + "' expects an unsigned integer, got '" + std::string(value) + "'");
        return out;
    }

    bool to_bool(std::size_t line, std::string_view key, std::string_view value) const
    {
        if (value == "true" || value == "1" || value == "yes")
            return true;
        if (value == "false" || value == "0" || value == "no")
            return false;
        syntax(line, "'" + std::string(key) + "' expects true or false, got '" + std::string(value) + "'");
    }

private:
    std::string where(std::size_t line) const { return std::string(origin_) + ":" + std::to_string(line) + ": "; }

    std::string_view origin_;
};

using Setter = std::function<void(std::size_t, std::string_view, std::string_view)>;

} // namespace

SimConfig default_config()
{
    SimConfig cfg;
    for (const auto &name : algorithm_names())
        cfg.algorithms.push_back(algorithm_from_name(name));
    return cfg;
}

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

SimConfig parse_config_text(std::string_view text, std::string_view origin)
{
    const Parser parse(origin);
    SimConfig cfg;
    std::set<std::string> seen_algorithms;
    std::set<std::string> seen_sections;

    const std::map<std::string, Setter, std::less<>> channel_keys{
        {"n_taps", [&](auto l, auto k, auto v) { cfg.n_taps = parse.to_count(l, k, v); }},
        {"sparsity", [&](auto l, auto k, auto v) { cfg.sparsity = parse.to_count(l, k, v); }},
        {"input",
         [&](auto l, auto, auto v) {
             if (v == "gaussian")
                 cfg.input = InputKind::gaussian;
             else if (v == "binary")
                 cfg.input = InputKind::binary;
             else
                 parse.invalid(l, "input must be gaussian or binary, got '" + std::string(v) + "'");
         }},
    };
    const std::map<std::string, Setter, std::less<>> noise_keys{
        {"alpha", [&](auto l, auto k, auto v) { cfg.noise.alpha = parse.to_double(l, k, v); }},
        {"beta", [&](auto l, auto k, auto v) { cfg.noise.beta = parse.to_double(l, k, v); }},
        {"gamma", [&](auto l, auto k, auto v) { cfg.noise.gamma = parse.to_double(l, k, v); }},
        {"delta", [&](auto l, auto k, auto v) { cfg.noise.delta = parse.to_double(l, k, v); }},
        {"enabled", [&](auto l, auto k, auto v) { cfg.noise_enabled = parse.to_bool(l, k, v); }},
    };
    const std::map<std::string, Setter, std::less<>> run_keys{
        {"iterations", [&](auto l, auto k, auto v) { cfg.n_iterations = parse.to_count(l, k, v); }},
        {"trials", [&](auto l, auto k, auto v) { cfg.n_trials = parse.to_count(l, k, v); }},
        {"snr_db", [&](auto l, auto k, auto v) { cfg.snr_db = parse.to_double(l, k, v); }},
        {"seed", [&](auto l, auto k, auto v) { cfg.master_seed = parse.to_seed(l, k, v); }},
        {"snr_mode",
         [&](auto l, auto, auto v) {
             if (v == "scale_noise")
                 cfg.snr_mode = SnrMode::scale_noise;
             else if (v == "scale_input")
                 cfg.snr_mode = SnrMode::scale_input;
             else
                 parse.invalid(l, "snr_mode must be scale_noise or scale_input, got '" + std::string(v) + "'");
         }},
    };

    auto algorithm_field = [&](double AlgorithmSpec::*field) -> Setter {
        return [&, field](auto l, auto k, auto v) { (cfg.algorithms.back().*field) = parse.to_double(l, k, v); };
    };
    const std::map<std::string, Setter, std::less<>> algorithm_keys{
        {"mu", algorithm_field(&AlgorithmSpec::mu)},
        {"rho_za", algorithm_field(&AlgorithmSpec::rho_za)},
        {"rho_rza", algorithm_field(&AlgorithmSpec::rho_rza)},
        {"eps_rza", algorithm_field(&AlgorithmSpec::eps_rza)},
        {"rho_rl1", algorithm_field(&AlgorithmSpec::rho_rl1)},
        {"delta_rl1", algorithm_field(&AlgorithmSpec::delta_rl1)},
        {"rho_lp", algorithm_field(&AlgorithmSpec::rho_lp)},
        {"eps_lp", algorithm_field(&AlgorithmSpec::eps_lp)},
        {"p", algorithm_field(&AlgorithmSpec::p)},
    };

    const std::map<std::string, Setter, std::less<>> *section = nullptr;
    std::string section_name;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto comment = line.find_first_of("#;"); comment != std::string_view::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                parse.syntax(line_no, "unterminated section header");
            section_name = std::string(trim(line.substr(1, line.size() - 2)));
            if (section_name == "channel")
                section = &channel_keys;
            else if (section_name == "noise")
                section = &noise_keys;
            else if (section_name == "run")
                section = &run_keys;
            else if (section_name.starts_with("algorithm.")) {
                const std::string name = section_name.substr(10);
                AlgorithmSpec spec;
                try {
                    spec = algorithm_from_name(name);
                } catch (const ParameterError &) {
                    parse.invalid(line_no, "unknown algorithm '" + name + "'");
                }
                if (!seen_algorithms.insert(name).second)
                    parse.invalid(line_no, "algorithm '" + name + "' listed twice");
                cfg.algorithms.push_back(spec);
                section = &algorithm_keys;
            } else
                parse.invalid(line_no, "unknown section [" + section_name + "]");
            if (!section_name.starts_with("algorithm.") && !seen_sections.insert(section_name).second)
                parse.invalid(line_no, "section [" + section_name + "] repeated");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            parse.syntax(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty())
            parse.syntax(line_no, "missing key before '='");
        if (value.empty())
            parse.syntax(line_no, "missing value for '" + std::string(key) + "'");
        if (section == nullptr)
            parse.syntax(line_no, "key '" + std::string(key) + "' appears before any section");

        const auto it = section->find(key);
        if (it == section->end())
            parse.invalid(line_no, "unknown key '" + std::string(key) + "' in [" + section_name + "]");
        it->second(line_no, key, value);
    }

    try {
        cfg.validate();
    } catch (const ParameterError &err) {
        throw ConfigError(ConfigErrorKind::invalid_value, std::string(origin) + ": " + err.what());
    }
    return cfg;
}

SimConfig parse_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(ConfigErrorKind::missing_file, "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void write_config(std::ostream &os, const SimConfig &config)
{
    os << "[channel]\n"
       << "n_taps = " << config.n_taps << '\n'
       << "sparsity = " << config.sparsity << '\n'
       << "input = " << (config.input == InputKind::gaussian ? "gaussian" : "binary") << '\n'
       << '\n'
       << "[noise]\n"
       << "alpha = " << format_double(config.noise.alpha) << '\n'
       << "beta = " << format_double(config.noise.beta) << '\n'
       << "gamma = " << format_double(config.noise.gamma) << '\n'
       << "delta = " << format_double(config.noise.delta) << '\n'
       << "enabled = " << (config.noise_enabled ? "true" : "false") << '\n'
       << '\n'
       << "[run]\n"
       << "iterations = " << config.n_iterations << '\n'
       << "trials = " << config.n_trials << '\n'
       << "snr_db = " << format_double(config.snr_db) << '\n'
       << "seed = " << config.master_seed << '\n'
       << "snr_mode = " << (config.snr_mode == SnrMode::scale_noise ? "scale_noise" : "scale_input") << '\n';

    for (const auto &spec : config.algorithms) {
        os << "\n[algorithm." << spec.name() << "]\n"
           << "mu = " << format_double(spec.mu) << '\n';
        switch (spec.penalty) {
        case Penalty::none:
            break;
        case Penalty::za:
            os << "rho_za = " << format_double(spec.rho_za) << '\n';
            break;
        case Penalty::rza:
            os << "rho_rza = " << format_double(spec.rho_rza) << '\n'
               << "eps_rza = " << format_double(spec.eps_rza) << '\n';
            break;
        case Penalty::rl1:
            os << "rho_rl1 = " << format_double(spec.rho_rl1) << '\n'
               << "delta_rl1 = " << format_double(spec.delta_rl1) << '\n';
            break;
        case Penalty::lp:
            os << "rho_lp = " << format_double(spec.rho_lp) << '\n'
               << "eps_lp = " << format_double(spec.eps_lp) << '\n'
               << "p = " << format_double(spec.p) << '\n';
            break;
        }
    }
}

std::string template_config()
{
    std::ostringstream os;
    os << "# Sparse (sign-)LMS channel estimation under alpha-stable noise.\n"
       << "# rho_* are per-step attractor coefficients.\n\n";
    write_config(os, default_config());
    return os.str();
}

} // namespace sslms
