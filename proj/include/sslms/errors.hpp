// SPDX-License-Identifier: Apache-2.0

#ifndef SSLMS_ERRORS_HPP
#define SSLMS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sslms {

// A value outside the domain of a model parameter (alpha outside (0, 2], sparsity > n_taps, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an adaptive update produces a non-finite coefficient.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t iteration, const std::string &what)
        : std::runtime_error(what), iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

} // namespace sslms

#endif
