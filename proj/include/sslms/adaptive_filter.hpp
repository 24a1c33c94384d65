// SPDX-License-Identifier: Apache-2.0
//
// LMS and sign-LMS adaptive filters with optional sparsity-inducing zero attractors.
//
// Every rule has the form
//
//   w(n+1) = w(n) + g(n) - a(n)
//
// where g(n) = mu * e(n) * x(n) (gradient family) or mu * sgn(e(n)) * x(n) (sign family),
// and a(n) is the elementwise attractor of the selected penalty:
//
//   none : 0
//   ZA   : rho_za * sgn(w)
//   RZA  : rho_rza * sgn(w) / (1 + eps_rza * |w|)
//   RL1  : rho_rl1 * sgn(w) / (delta_rl1 + |w_prev|)
//   LP   : rho_lp * ||w||_p^(1-p) * sgn(w) / (eps_lp + |w|^(1-p))
//
// sgn(0) = 0 everywhere, so exact zeros stay zero under every attractor.

#ifndef SSLMS_ADAPTIVE_FILTER_HPP
#define SSLMS_ADAPTIVE_FILTER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sslms {

enum class Family { gradient, sign };
enum class Penalty { none, za, rza, rl1, lp };

struct AlgorithmSpec {
    Family family = Family::sign;
    Penalty penalty = Penalty::none;
    double mu = 0.005;
    double rho_za = 2e-4;
    double rho_rza = 2e-3;
    double eps_rza = 20.0;
    double rho_rl1 = 5e-5;
    double delta_rl1 = 0.05;
    double rho_lp = 5e-6;
    double eps_lp = 0.05;
    double p = 0.5;

    void validate() const;

    // Wire name, e.g. "slms-rza".
    std::string name() const;

    bool operator==(const AlgorithmSpec &) const = default;
};

// Spec with default hyperparameters for a wire name (lms, slms, lms-za, ..., slms-lp).
// Throws ParameterError for unknown names.
AlgorithmSpec algorithm_from_name(std::string_view name);

// All ten wire names in canonical order.
const std::vector<std::string> &algorithm_names();

struct FilterState {
    std::vector<double> w;
    std::vector<double> w_prev;
    std::size_t n = 0;

    // w(0) = w(-1) = 0.
    static FilterState zeros(std::size_t n_taps);

    std::size_t size() const { return w.size(); }
};

std::vector<double> sign(std::span<const double> v);

double predict(const FilterState &state, std::span<const double> x);

double error(double desired, const FilterState &state, std::span<const double> x);

// Attractor term a(n) for the current state; zero vector for Penalty::none.
std::vector<double> attractor(const AlgorithmSpec &spec, const FilterState &state);

// Penalty function alone: ||w||_1 (ZA), sum log(1 + eps|w_i|) (RZA),
// ||f o w||_1 with f_i = 1/(delta + |w_prev_i|) held fixed (RL1), ||w||_p (LP), 0 (none).
// An empty w_prev is read as zeros.
double penalty_value(const AlgorithmSpec &spec, std::span<const double> w,
                     std::span<const double> w_prev = {});

// One update. Returns the new state with w_prev set to the incoming w and n incremented.
// Throws DivergenceError (carrying the iteration index) if any coefficient becomes non-finite.
FilterState step(const AlgorithmSpec &spec, const FilterState &state, std::span<const double> x, double d);

// In-place form of step(). Returns e(n). After a DivergenceError the state is unspecified.
double advance(const AlgorithmSpec &spec, FilterState &state, std::span<const double> x, double d);

} // namespace sslms

#endif
