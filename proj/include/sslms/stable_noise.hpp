// SPDX-License-Identifier: Apache-2.0
//
// Alpha-stable noise: characteristic function and Chambers-Mallows-Stuck sampler.
//
// Parametrization (dispersion form):
//
//   p(t) = exp{ j*delta*t - gamma*|t|^alpha * [1 + j*beta*sgn(t)*S(t, alpha)] }
//   S(t, alpha) = tan(alpha*pi/2)        alpha != 1
//               = -(2/pi) * log|t|        alpha == 1
//
// gamma is the dispersion, i.e. gamma = scale^alpha. For alpha = 2 the law is
// Gaussian with mean delta and variance 2*gamma. Relative to the common S1 form
// exp{-sigma^alpha |t|^alpha (1 - i beta sgn(t) tan(pi alpha/2)) + i mu t} the
// skewness has the opposite sign: beta_S1 = -beta, sigma = gamma^(1/alpha).

#ifndef SSLMS_STABLE_NOISE_HPP
#define SSLMS_STABLE_NOISE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sslms/rng.hpp"

namespace sslms {

struct AlphaStableParams {
    double alpha = 1.2; // characteristic exponent, (0, 2]
    double beta = 0.0;  // symmetry, [-1, 1]
    double gamma = 1.0; // dispersion, > 0
    double delta = 0.0; // location

    // Throws ParameterError naming the offending field.
    void validate() const;

    bool operator==(const AlphaStableParams &) const = default;
};

std::complex<double> characteristic_function(const AlphaStableParams &params, double t);

// One draw. `params` must be valid; validity is checked once per call.
double sample(const AlphaStableParams &params, Rng &rng);

// `count` draws from a single stream. Equivalent to calling sample() `count` times.
std::vector<double> sample_n(const AlphaStableParams &params, std::size_t count, Rng &rng);

// Monte-Carlo estimate of E[exp(j t Z)] from the given draws.
std::complex<double> empirical_characteristic_function(std::span<const double> draws, double t);

struct CfCheckRow {
    double t;
    std::complex<double> empirical;
    std::complex<double> analytic;
    double error; // |empirical - analytic|
};

// Evaluates both characteristic functions on `grid` and reports the modulus of the difference.
std::vector<CfCheckRow> compare_characteristic_functions(const AlphaStableParams &params,
                                                         std::span<const double> draws,
                                                         std::span<const double> grid);

// Two-sided Kolmogorov-Smirnov statistic of `draws` against N(mean, variance).
double ks_statistic_normal(std::vector<double> draws, double mean, double variance);

// Asymptotic p-value of the KS statistic `d` for sample size n (Kolmogorov distribution).
double ks_p_value(double d, std::size_t n);

} // namespace sslms

#endif
