// SPDX-License-Identifier: Apache-2.0

#include "sslms/stable_noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sslms/errors.hpp"

namespace sslms {

namespace {

constexpr double pi = std::numbers::pi;

// Smallest |t| fed to log|t| on the alpha == 1 branch.
constexpr double min_abs_t = 1e-300;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Open interval (-pi/2, pi/2).
double draw_angle(Rng &rng)
{
    std::uniform_real_distribution<double> uniform(-pi / 2.0, pi / 2.0);
    double v;
    do {
        v = uniform(rng);
    } while (v <= -pi / 2.0 || v >= pi / 2.0);
    return v;
}

double draw_exponential(Rng &rng)
{
    std::exponential_distribution<double> expo(1.0);
    double w;
    do {
        w = expo(rng);
    } while (!(w > 0.0));
    return w;
}

// Standard S1 variate (scale 1, location 0) with skewness `b` in the S1 sign convention.
double standard_cms(double alpha, double b, Rng &rng)
{
    const double v = draw_angle(rng);
    const double w = draw_exponential(rng);

    if (alpha != 1.0) {
        const double zeta = b * std::tan(pi * alpha / 2.0);
        const double shift = std::atan(zeta) / alpha;
        const double scale = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
        const double a = alpha * (v + shift);
        return scale * std::sin(a) / std::pow(std::cos(v), 1.0 / alpha) *
               std::pow(std::cos(v - a) / w, (1.0 - alpha) / alpha);
    }

    const double half_pi_bv = pi / 2.0 + b * v;
    return (2.0 / pi) * (half_pi_bv * std::tan(v) - b * std::log((pi / 2.0) * w * std::cos(v) / half_pi_bv));
}

} // namespace

void AlphaStableParams::validate() const
{
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw ParameterError("alpha must lie in (0, 2], got " + std::to_string(alpha));
    if (!(beta >= -1.0 && beta <= 1.0))
        throw ParameterError("beta must lie in [-1, 1], got " + std::to_string(beta));
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ParameterError("gamma must be positive and finite, got " + std::to_string(gamma));
    if (!std::isfinite(delta))
        throw ParameterError("delta must be finite");
}

std::complex<double> characteristic_function(const AlphaStableParams &params, double t)
{
    params.validate();
    if (t == 0.0)
        return {1.0, 0.0};

    const double abs_t = std::abs(t);
    const double skew_factor = params.alpha != 1.0
                                   ? std::tan(params.alpha * pi / 2.0)
                                   : (-2.0 / pi) * std::log(std::max(abs_t, min_abs_t));
    const double spread = params.gamma * std::pow(abs_t, params.alpha);
    const std::complex<double> exponent(-spread,
                                        params.delta * t - spread * params.beta * sgn(t) * skew_factor);
    return std::exp(exponent);
}

double sample(const AlphaStableParams &params, Rng &rng)
{
    params.validate();
    const double b = -params.beta;
    const double x = standard_cms(params.alpha, b, rng);

    if (params.alpha != 1.0) {
        const double sigma = std::pow(params.gamma, 1.0 / params.alpha);
        return sigma * x + params.delta;
    }
    const double sigma = params.gamma;
    return sigma * x + (2.0 / pi) * b * sigma * std::log(sigma) + params.delta;
}

std::vector<double> sample_n(const AlphaStableParams &params, std::size_t count, Rng &rng)
{
    std::vector<double> out(count);
    for (auto &z : out)
        z = sample(params, rng);
    return out;
}

std::complex<double> empirical_characteristic_function(std::span<const double> draws, double t)
{
    if (draws.empty())
        throw ParameterError("empirical characteristic function needs at least one draw");
    double re = 0.0;
    double im = 0.0;
    for (double z : draws) {
        re += std::cos(t * z);
        im += std::sin(t * z);
    }
    const auto n = static_cast<double>(draws.size());
    return {re / n, im / n};
}

std::vector<CfCheckRow> compare_characteristic_functions(const AlphaStableParams &params,
                                                         std::span<const double> draws,
                                                         std::span<const double> grid)
{
    std::vector<CfCheckRow> rows;
    rows.reserve(grid.size());
    for (double t : grid) {
        const auto emp = empirical_characteristic_function(draws, t);
        const auto ana = characteristic_function(params, t);
        rows.push_back({t, emp, ana, std::abs(emp - ana)});
    }
    return rows;
}

double ks_statistic_normal(std::vector<double> draws, double mean, double variance)
{
    if (draws.empty())
        throw ParameterError("KS statistic needs at least one draw");
    if (!(variance > 0.0))
        throw ParameterError("KS reference variance must be positive");

    std::sort(draws.begin(), draws.end());
    const double sd = std::sqrt(variance);
    const auto n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-(draws[i] - mean) / (sd * std::numbers::sqrt2));
        d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    return d;
}

double ks_p_value(double d, std::size_t n)
{
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * d;
    if (lambda < 1e-3)
        return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12)
            break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace sslms
