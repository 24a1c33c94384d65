// SPDX-License-Identifier: Apache-2.0

#ifndef SSLMS_CHANNEL_MODEL_HPP
#define SSLMS_CHANNEL_MODEL_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sslms/rng.hpp"

namespace sslms {

// K-sparse N-tap FIR channel, normalized to unit l2 norm.
struct SparseChannel {
    std::vector<double> taps;
    std::vector<std::size_t> support; // sorted ascending

    std::size_t n_taps() const { return taps.size(); }
    std::size_t sparsity() const { return support.size(); }
};

enum class InputKind { gaussian, binary };

struct TrainingSignal {
    std::vector<double> samples;
    double power = 1.0; // nominal mean square value

    std::size_t size() const { return samples.size(); }
};

// Support drawn uniformly without replacement, nonzero values i.i.d. N(0, 1), then scaled to ||w||_2 = 1.
SparseChannel generate_channel(std::size_t n_taps, std::size_t sparsity, Rng &rng);

// i.i.d. zero-mean samples with mean square `power`: Gaussian, or +-sqrt(power) for the binary PN option.
TrainingSignal generate_input(std::size_t length, double power, Rng &rng,
                              InputKind kind = InputKind::gaussian);

// Delay line [x(n), x(n-1), ..., x(n-N+1)], zeros before time 0.
std::vector<double> regressor(const TrainingSignal &signal, std::size_t n, std::size_t n_taps);

// Same as regressor(), written into `out` (size n_taps) without allocating.
void regressor_into(std::span<const double> samples, std::size_t n, std::span<double> out);

// CSV with header "index,value", one row per element, 17 significant digits.
void write_vector_csv(std::ostream &os, std::span<const double> values);

} // namespace sslms

#endif
