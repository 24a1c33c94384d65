// SPDX-License-Identifier: Apache-2.0

#include "sslms/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sslms/errors.hpp"

namespace sslms {

SparseChannel generate_channel(std::size_t n_taps, std::size_t sparsity, Rng &rng)
{
    if (sparsity < 1 || sparsity > n_taps)
        throw ParameterError("sparsity must satisfy 1 <= K <= N, got K=" + std::to_string(sparsity) +
                             ", N=" + std::to_string(n_taps));

    // Partial Fisher-Yates over the index set.
    std::vector<std::size_t> index(n_taps);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < sparsity; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n_taps - 1);
        std::swap(index[i], index[pick(rng)]);
    }

    SparseChannel ch;
    ch.support.assign(index.begin(), index.begin() + static_cast<std::ptrdiff_t>(sparsity));
    std::sort(ch.support.begin(), ch.support.end());
    ch.taps.assign(n_taps, 0.0);

    std::normal_distribution<double> gauss(0.0, 1.0);
    double norm2 = 0.0;
    for (std::size_t pos : ch.support) {
        double v;
        do {
            v = gauss(rng);
        } while (v == 0.0);
        ch.taps[pos] = v;
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t pos : ch.support)
        ch.taps[pos] *= inv;
    return ch;
}

TrainingSignal generate_input(std::size_t length, double power, Rng &rng, InputKind kind)
{
    if (length < 1)
        throw ParameterError("training signal length must be >= 1");
    if (!(power > 0.0) || !std::isfinite(power))
        throw ParameterError("training signal power must be positive, got " + std::to_string(power));

    TrainingSignal sig;
    sig.power = power;
    sig.samples.resize(length);
    const double amp = std::sqrt(power);
    if (kind == InputKind::gaussian) {
        std::normal_distribution<double> gauss(0.0, amp);
        for (auto &x : sig.samples)
            x = gauss(rng);
    } else {
        std::bernoulli_distribution coin(0.5);
        for (auto &x : sig.samples)
            x = coin(rng) ? amp : -amp;
    }
    return sig;
}

void regressor_into(std::span<const double> samples, std::size_t n, std::span<double> out)
{
    if (n >= samples.size())
        throw std::out_of_range("regressor index " + std::to_string(n) + " outside signal of length " +
                                std::to_string(samples.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = k <= n ? samples[n - k] : 0.0;
}

std::vector<double> regressor(const TrainingSignal &signal, std::size_t n, std::size_t n_taps)
{
    std::vector<double> out(n_taps);
    regressor_into(signal.samples, n, out);
    return out;
}

void write_vector_csv(std::ostream &os, std::span<const double> values)
{
    const auto old_precision = os.precision(17);
    os << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << i << ',' << values[i] << '\n';
    os.precision(old_precision);
}

} // namespace sslms
