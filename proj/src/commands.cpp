// SPDX-License-Identifier: Apache-2.0

#include "sslms/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sslms/config.hpp"
#include "sslms/errors.hpp"

namespace sslms {

namespace {

std::string full_precision(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string iso_time(std::chrono::system_clock::time_point tp)
{
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm utc{};
    gmtime_r(&t, &utc);
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

int exit_code_for(const ConfigError &err)
{
    switch (err.kind()) {
    case ConfigErrorKind::missing_file:
        return exit_io;
    case ConfigErrorKind::syntax:
        return exit_usage;
    case ConfigErrorKind::invalid_value:
        return exit_invalid_config;
    }
    return exit_usage;
}

} // namespace

SimConfig resolve_config(const RunOptions &options)
{
    SimConfig cfg = options.config_path ? parse_config(*options.config_path) : default_config();

    if (options.seed)
        cfg.master_seed = *options.seed;
    if (options.trials)
        cfg.n_trials = *options.trials;
    if (options.iterations)
        cfg.n_iterations = *options.iterations;
    if (options.snr_db)
        cfg.snr_db = *options.snr_db;

    if (!options.algorithms.empty()) {
        std::vector<AlgorithmSpec> selected;
        for (const auto &name : options.algorithms) {
            AlgorithmSpec spec;
            try {
                spec = algorithm_from_name(name);
            } catch (const ParameterError &err) {
                throw ConfigError(ConfigErrorKind::invalid_value, err.what());
            }
            const auto it = std::find_if(cfg.algorithms.begin(), cfg.algorithms.end(),
                                         [&](const AlgorithmSpec &s) { return s.name() == name; });
            if (it != cfg.algorithms.end())
                spec = *it;
            if (std::any_of(selected.begin(), selected.end(), [&](const AlgorithmSpec &s) { return s.name() == name; }))
                throw ConfigError(ConfigErrorKind::invalid_value, "algorithm '" + name + "' selected twice");
            selected.push_back(spec);
        }
        cfg.algorithms = std::move(selected);
    }

    try {
        cfg.validate();
    } catch (const ParameterError &err) {
        throw ConfigError(ConfigErrorKind::invalid_value, err.what());
    }
    return cfg;
}

void write_curves_csv(std::ostream &os, std::vector<LearningCurve> curves, std::size_t n_iterations)
{
    std::stable_sort(curves.begin(), curves.end(),
                     [](const LearningCurve &a, const LearningCurve &b) { return a.algorithm < b.algorithm; });

    os << csv_header << '\n';
    for (const auto &curve : curves) {
        for (std::size_t n = 0; n < n_iterations; ++n) {
            const double value = n < curve.mse_db.size() ? curve.mse_db[n] : std::nan("");
            os << curve.algorithm << ',' << (n + 1) << ',' << full_precision(value) << ',' << curve.trials_diverged
               << '\n';
        }
    }
}

void write_manifest(std::ostream &os, const RunManifest &manifest)
{
    os << "tool = sslms\n"
       << "tool_version = " << manifest.tool_version << '\n'
       << "config_path = " << (manifest.config_path.empty() ? "<defaults>" : manifest.config_path) << '\n'
       << "output_path = " << manifest.output_path << '\n'
       << "seed = " << manifest.config.master_seed << '\n'
       << "threads = " << manifest.threads << '\n'
       << "started = " << iso_time(manifest.started) << '\n'
       << "finished = " << iso_time(manifest.finished) << '\n'
       << "\n# resolved configuration\n";
    write_config(os, manifest.config);
}

int cmd_run(const RunOptions &options, std::ostream &log, std::ostream &err)
{
    RunManifest manifest;
    manifest.started = std::chrono::system_clock::now();
    manifest.tool_version = tool_version;
    manifest.threads = options.threads;
    manifest.output_path = options.out.string();
    manifest.config_path = options.config_path ? options.config_path->string() : std::string{};

    try {
        manifest.config = resolve_config(options);
    } catch (const ConfigError &e) {
        err << "sslms run: " << e.what() << '\n';
        return exit_code_for(e);
    }
    const SimConfig &cfg = manifest.config;

    std::vector<LearningCurve> curves;
    try {
        curves = run_experiment(cfg, options.threads);
    } catch (const std::exception &e) {
        err << "sslms run: " << e.what() << '\n';
        return exit_runtime;
    }
    manifest.finished = std::chrono::system_clock::now();

    {
        std::ofstream csv(options.out, std::ios::binary | std::ios::trunc);
        if (!csv) {
            err << "sslms run: cannot write '" << options.out.string() << "'\n";
            return exit_io;
        }
        csv.imbue(std::locale::classic());
        write_curves_csv(csv, curves, cfg.n_iterations);
        if (!csv.flush()) {
            err << "sslms run: write to '" << options.out.string() << "' failed\n";
            return exit_io;
        }
    }

    const auto manifest_path = options.manifest.value_or(std::filesystem::path(options.out.string() + ".manifest"));
    {
        std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
        if (!mf) {
            err << "sslms run: cannot write '" << manifest_path.string() << "'\n";
            return exit_io;
        }
        mf.imbue(std::locale::classic());
        write_manifest(mf, manifest);
    }

    int code = exit_ok;
    for (const auto &curve : curves) {
        log << curve.algorithm << ": ";
        if (curve.mse_db.empty()) {
            log << "all " << curve.trials_diverged << " trials diverged\n";
            err << "sslms run: every trial of " << curve.algorithm << " diverged\n";
            code = exit_runtime;
            continue;
        }
        log << "final " << std::fixed << std::setprecision(2) << curve.mse_db.back() << " dB, tail mean "
            << tail_mean(curve.mse_db) << " dB, diverged " << curve.trials_diverged << "/"
            << (curve.trials_completed + curve.trials_diverged) << '\n';
        log.unsetf(std::ios::floatfield);
    }
    return code;
}

NoiseValidation validate_noise(const ValidateNoiseOptions &options)
{
    options.params.validate();
    if (options.samples < 1)
        throw ParameterError("samples must be >= 1");

    Rng rng(options.seed);
    const auto draws = sample_n(options.params, options.samples, rng);

    NoiseValidation result;
    result.rows = compare_characteristic_functions(options.params, draws, options.grid);
    for (const auto &row : result.rows)
        result.max_error = std::max(result.max_error, row.error);
    result.passed = result.max_error <= options.tolerance;
    return result;
}

int cmd_validate_noise(const ValidateNoiseOptions &options, std::ostream &out, std::ostream &err)
{
    NoiseValidation result;
    try {
        result = validate_noise(options);
    } catch (const ParameterError &e) {
        err << "sslms validate-noise: " << e.what() << '\n';
        return exit_usage;
    }

    const auto &p = options.params;
    out << "alpha=" << p.alpha << " beta=" << p.beta << " gamma=" << p.gamma << " delta=" << p.delta
        << " samples=" << options.samples << " seed=" << options.seed << '\n';
    out << std::setw(8) << "t" << std::setw(24) << "empirical" << std::setw(24) << "analytic" << std::setw(12)
        << "|error|" << '\n';
    out << std::fixed;
    for (const auto &row : result.rows) {
        std::ostringstream emp, ana;
        emp << std::fixed << std::setprecision(5) << row.empirical.real() << std::showpos << row.empirical.imag() << 'j';
        ana << std::fixed << std::setprecision(5) << row.analytic.real() << std::showpos << row.analytic.imag() << 'j';
        out << std::setw(8) << std::setprecision(2) << row.t << std::setw(24) << emp.str() << std::setw(24)
            << ana.str() << std::setw(12) << std::setprecision(5) << row.error << '\n';
    }
    out << "max |error| = " << std::setprecision(5) << result.max_error << " (tolerance "
        << options.tolerance << "): " << (result.passed ? "PASS" : "FAIL") << '\n';
    out.unsetf(std::ios::floatfield);
    return result.passed ? exit_ok : exit_runtime;
}

} // namespace sslms
