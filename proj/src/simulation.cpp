// SPDX-License-Identifier: Apache-2.0

#include "sslms/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sslms/errors.hpp"

namespace sslms {

namespace {

// Stream indices below a trial seed.
enum Stream : std::uint64_t { channel_stream = 0, input_stream = 1, noise_stream = 2 };

double squared_distance(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

double squared_norm(std::span<const double> a)
{
    double s = 0.0;
    for (double v : a)
        s += v * v;
    return s;
}

} // namespace

void SimConfig::validate() const
{
    if (n_taps < 1)
        throw ParameterError("n_taps must be >= 1");
    if (sparsity < 1 || sparsity > n_taps)
        throw ParameterError("sparsity must satisfy 1 <= K <= N");
    if (n_iterations < 1)
        throw ParameterError("n_iterations must be >= 1");
    if (n_trials < 1)
        throw ParameterError("n_trials must be >= 1");
    if (!std::isfinite(snr_db))
        throw ParameterError("snr_db must be finite");
    noise.validate();
    if (algorithms.empty())
        throw ParameterError("at least one algorithm is required");
    for (const auto &spec : algorithms)
        spec.validate();
}

double average_to_db(double mean_normalized_error)
{
    if (!(mean_normalized_error > 0.0))
        return mse_floor_db;
    return std::max(10.0 * std::log10(mean_normalized_error), mse_floor_db);
}

double mse_db(std::span<const std::vector<double>> estimates, std::span<const double> truth)
{
    if (estimates.empty())
        throw ParameterError("mse_db needs at least one estimate");
    const double truth_norm2 = squared_norm(truth);
    if (!(truth_norm2 > 0.0))
        throw ParameterError("mse_db: truth vector has zero norm");

    double acc = 0.0;
    for (const auto &est : estimates) {
        if (est.size() != truth.size())
            throw std::invalid_argument("mse_db: estimate and truth differ in length");
        acc += squared_distance(est, truth) / truth_norm2;
    }
    return average_to_db(acc / static_cast<double>(estimates.size()));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index)
{
    return derive_seed(master_seed, trial_index);
}

double apply_snr(const SimConfig &config)
{
    const double ratio = std::pow(10.0, config.snr_db / 10.0);
    const double noise_power = config.noise.alpha == 2.0 ? 2.0 * config.noise.gamma : config.noise.gamma;
    return noise_power * ratio;
}

TrialData make_trial_data(const SimConfig &config, std::uint64_t seed)
{
    Rng channel_rng(derive_seed(seed, channel_stream));
    Rng input_rng(derive_seed(seed, input_stream));
    Rng noise_rng(derive_seed(seed, noise_stream));

    const double p0 = apply_snr(config);
    const bool scale_input = config.snr_mode == SnrMode::scale_input;

    TrialData data;
    data.channel = generate_channel(config.n_taps, config.sparsity, channel_rng);
    data.input = generate_input(config.n_iterations, scale_input ? p0 : 1.0, input_rng, config.input);

    data.noise.assign(config.n_iterations, 0.0);
    if (config.noise_enabled) {
        const double noise_gain = scale_input ? 1.0 : 1.0 / std::sqrt(p0);
        for (auto &z : data.noise)
            z = noise_gain * sample(config.noise, noise_rng);
    }

    data.desired.resize(config.n_iterations);
    std::vector<double> x(config.n_taps);
    for (std::size_t n = 0; n < config.n_iterations; ++n) {
        regressor_into(data.input.samples, n, x);
        double y = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            y += data.channel.taps[i] * x[i];
        data.desired[n] = y + data.noise[n];
    }
    return data;
}

TrialResult run_trial(const TrialData &data, const AlgorithmSpec &spec, std::size_t n_iterations)
{
    const auto &truth = data.channel.taps;
    const std::size_t n_taps = truth.size();
    const double truth_norm2 = squared_norm(truth);

    TrialResult result;
    result.errors.reserve(n_iterations);

    FilterState state = FilterState::zeros(n_taps);
    std::vector<double> x(n_taps);
    try {
        for (std::size_t n = 0; n < n_iterations; ++n) {
            regressor_into(data.input.samples, n, x);
            advance(spec, state, x, data.desired[n]);
            result.errors.push_back(squared_distance(state.w, truth) / truth_norm2);
        }
    } catch (const DivergenceError &err) {
        result.diverged = true;
        result.diverged_at = err.iteration();
    }
    return result;
}

TrialResult run_trial(const SimConfig &config, const AlgorithmSpec &spec, std::uint64_t seed)
{
    config.validate();
    spec.validate();
    return run_trial(make_trial_data(config, seed), spec, config.n_iterations);
}

TrialTable run_trials(const SimConfig &config, unsigned threads)
{
    config.validate();

    TrialTable table(config.algorithms.size(), std::vector<TrialResult>(config.n_trials));

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.n_trials));

    // Each worker owns whole trials; every (algorithm, trial) slot is written by exactly one worker.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t m = next.fetch_add(1);
            if (m >= config.n_trials)
                return;
            try {
                const TrialData data = make_trial_data(config, trial_seed(config.master_seed, m));
                for (std::size_t a = 0; a < config.algorithms.size(); ++a)
                    table[a][m] = run_trial(data, config.algorithms[a], config.n_iterations);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(config.n_trials);
                return;
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return table;
}

LearningCurve aggregate(const std::string &algorithm, std::span<const TrialResult> trials,
                        std::size_t n_iterations)
{
    LearningCurve curve;
    curve.algorithm = algorithm;

    std::vector<double> sum(n_iterations, 0.0);
    for (const auto &trial : trials) {
        if (trial.diverged) {
            ++curve.trials_diverged;
            continue;
        }
        ++curve.trials_completed;
        for (std::size_t n = 0; n < n_iterations; ++n)
            sum[n] += trial.errors[n];
    }
    if (curve.trials_completed == 0)
        return curve;

    curve.mse_db.resize(n_iterations);
    const auto m = static_cast<double>(curve.trials_completed);
    for (std::size_t n = 0; n < n_iterations; ++n)
        curve.mse_db[n] = average_to_db(sum[n] / m);
    return curve;
}

std::vector<LearningCurve> run_experiment(const SimConfig &config, unsigned threads)
{
    const TrialTable table = run_trials(config, threads);
    std::vector<LearningCurve> curves;
    curves.reserve(table.size());
    for (std::size_t a = 0; a < table.size(); ++a)
        curves.push_back(aggregate(config.algorithms[a].name(), table[a], config.n_iterations));
    return curves;
}

double tail_mean(std::span<const double> mse_db, double fraction)
{
    if (mse_db.empty())
        throw ParameterError("tail_mean of an empty curve");
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(mse_db.size()))));
    const auto tail = mse_db.last(std::min(count, mse_db.size()));
    double s = 0.0;
    for (double v : tail)
        s += v;
    return s / static_cast<double>(tail.size());
}

} // namespace sslms
