// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte-Carlo experiments producing normalized-MSE learning curves
//
//   MSE(n) = 10 log10( (1/M) sum_m ||w_m(n) - w||^2 / ||w||^2 )
//
// Trial m of every algorithm sees the same channel, training input and noise, all derived
// from trial_seed(master_seed, m). Results do not depend on the number of worker threads.

#ifndef SSLMS_SIMULATION_HPP
#define SSLMS_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sslms/adaptive_filter.hpp"
#include "sslms/channel_model.hpp"
#include "sslms/stable_noise.hpp"

namespace sslms {

inline constexpr double mse_floor_db = -100.0;

// How the SNR is realized in the regression d(n) = w^T x(n) + z(n).
//   scale_noise: unit-power input, noise divided by sqrt(P0).
//   scale_input: input with power P0, noise as configured.
// Both give the same P0/noise ratio; they differ by an overall factor sqrt(P0) in x and d,
// which matters because mu is not normalized by the input power.
enum class SnrMode { scale_noise, scale_input };

struct SimConfig {
    std::size_t n_taps = 128;
    std::size_t sparsity = 8;
    std::size_t n_iterations = 3000;
    std::size_t n_trials = 100;
    double snr_db = 10.0;
    AlphaStableParams noise{1.2, 0.0, 1.0, 0.0};
    bool noise_enabled = true; // false gives z(n) = 0, for noiseless checks
    InputKind input = InputKind::gaussian;
    SnrMode snr_mode = SnrMode::scale_noise;
    std::vector<AlgorithmSpec> algorithms;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct LearningCurve {
    std::string algorithm;
    std::vector<double> mse_db; // empty when every trial diverged
    std::size_t trials_completed = 0;
    std::size_t trials_diverged = 0;
};

struct TrialResult {
    std::vector<double> errors; // ||w(n) - w||^2 / ||w||^2 after update n = 1..n_iterations
    bool diverged = false;
    std::size_t diverged_at = 0;
};

// One trial's random realization, shared by every algorithm.
struct TrialData {
    SparseChannel channel;
    TrainingSignal input;
    std::vector<double> noise;   // z(n) as added to d(n)
    std::vector<double> desired; // d(n)
};

double mse_db(std::span<const std::vector<double>> estimates, std::span<const double> truth);

// Trial-averaged normalized errors in dB, floored at mse_floor_db.
double average_to_db(double mean_normalized_error);

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index);

// Training-signal power that achieves config.snr_db against the configured noise:
// 2*gamma*10^(snr/10) for alpha = 2, gamma*10^(snr/10) otherwise.
double apply_snr(const SimConfig &config);

TrialData make_trial_data(const SimConfig &config, std::uint64_t seed);

TrialResult run_trial(const SimConfig &config, const AlgorithmSpec &spec, std::uint64_t seed);
TrialResult run_trial(const TrialData &data, const AlgorithmSpec &spec, std::size_t n_iterations);

// Per-algorithm, per-trial results; outer index follows config.algorithms, inner the trial index.
using TrialTable = std::vector<std::vector<TrialResult>>;

// threads == 0 uses the hardware concurrency.
TrialTable run_trials(const SimConfig &config, unsigned threads = 0);

LearningCurve aggregate(const std::string &algorithm, std::span<const TrialResult> trials,
                        std::size_t n_iterations);

std::vector<LearningCurve> run_experiment(const SimConfig &config, unsigned threads = 0);

// Mean of the last `fraction` of a curve (at least one point).
double tail_mean(std::span<const double> mse_db, double fraction = 0.1);

} // namespace sslms

#endif
