// SPDX-License-Identifier: Apache-2.0

#include "sslms/adaptive_filter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sslms/errors.hpp"

namespace sslms {

namespace {

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

void require_same_size(std::size_t a, std::size_t b)
{
    if (a != b)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

double lp_norm(std::span<const double> w, double p)
{
    double s = 0.0;
    for (double v : w)
        s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

// Per-state factors shared by every coefficient of the LP attractor.
double lp_scale(const AlgorithmSpec &spec, std::span<const double> w)
{
    const double norm = lp_norm(w, spec.p);
    return norm > 0.0 ? spec.rho_lp * std::pow(norm, 1.0 - spec.p) : 0.0;
}

double attractor_at(const AlgorithmSpec &spec, double w, double w_prev, double lp_factor)
{
    const double s = sgn(w);
    switch (spec.penalty) {
    case Penalty::none:
        return 0.0;
    case Penalty::za:
        return spec.rho_za * s;
    case Penalty::rza:
        return spec.rho_rza * s / (1.0 + spec.eps_rza * std::abs(w));
    case Penalty::rl1:
        return spec.rho_rl1 * s / (spec.delta_rl1 + std::abs(w_prev));
    case Penalty::lp:
        return lp_factor * s / (spec.eps_lp + std::pow(std::abs(w), 1.0 - spec.p));
    }
    return 0.0;
}

struct NamedSpec {
    const char *name;
    Family family;
    Penalty penalty;
};

constexpr std::array<NamedSpec, 10> named_specs{{
    {"lms", Family::gradient, Penalty::none},
    {"slms", Family::sign, Penalty::none},
    {"lms-za", Family::gradient, Penalty::za},
    {"slms-za", Family::sign, Penalty::za},
    {"lms-rza", Family::gradient, Penalty::rza},
    {"slms-rza", Family::sign, Penalty::rza},
    {"lms-rl1", Family::gradient, Penalty::rl1},
    {"slms-rl1", Family::sign, Penalty::rl1},
    {"lms-lp", Family::gradient, Penalty::lp},
    {"slms-lp", Family::sign, Penalty::lp},
}};

} // namespace

void AlgorithmSpec::validate() const
{
    auto require = [this](bool ok, const char *what) {
        if (!ok)
            throw ParameterError(name() + ": " + what);
    };
    require(mu > 0.0 && std::isfinite(mu), "mu must be positive");
    require(rho_za >= 0.0 && rho_rza >= 0.0 && rho_rl1 >= 0.0 && rho_lp >= 0.0,
            "attractor coefficients rho must be >= 0");
    require(eps_rza > 0.0, "eps_rza must be positive");
    require(delta_rl1 > 0.0, "delta_rl1 must be positive");
    require(eps_lp > 0.0, "eps_lp must be positive");
    require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
}

std::string AlgorithmSpec::name() const
{
    for (const auto &ns : named_specs)
        if (ns.family == family && ns.penalty == penalty)
            return ns.name;
    return "unknown";
}

AlgorithmSpec algorithm_from_name(std::string_view name)
{
    for (const auto &ns : named_specs) {
        if (name == ns.name) {
            AlgorithmSpec spec;
            spec.family = ns.family;
            spec.penalty = ns.penalty;
            return spec;
        }
    }
    throw ParameterError("unknown algorithm '" + std::string(name) + "'");
}

const std::vector<std::string> &algorithm_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &ns : named_specs)
            out.emplace_back(ns.name);
        return out;
    }();
    return names;
}

FilterState FilterState::zeros(std::size_t n_taps)
{
    return FilterState{std::vector<double>(n_taps, 0.0), std::vector<double>(n_taps, 0.0), 0};
}

std::vector<double> sign(std::span<const double> v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), sgn);
    return out;
}

double predict(const FilterState &state, std::span<const double> x)
{
    require_same_size(state.w.size(), x.size());
    double y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        y += state.w[i] * x[i];
    return y;
}

double error(double desired, const FilterState &state, std::span<const double> x)
{
    return desired - predict(state, x);
}

std::vector<double> attractor(const AlgorithmSpec &spec, const FilterState &state)
{
    require_same_size(state.w.size(), state.w_prev.size());
    const double lp_factor = spec.penalty == Penalty::lp ? lp_scale(spec, state.w) : 0.0;
    std::vector<double> out(state.w.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = attractor_at(spec, state.w[i], state.w_prev[i], lp_factor);
    return out;
}

double penalty_value(const AlgorithmSpec &spec, std::span<const double> w, std::span<const double> w_prev)
{
    if (!w_prev.empty())
        require_same_size(w.size(), w_prev.size());

    double acc = 0.0;
    switch (spec.penalty) {
    case Penalty::none:
        return 0.0;
    case Penalty::za:
        for (double v : w)
            acc += std::abs(v);
        return acc;
    case Penalty::rza:
        for (double v : w)
            acc += std::log1p(spec.eps_rza * std::abs(v));
        return acc;
    case Penalty::rl1:
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double prev = w_prev.empty() ? 0.0 : w_prev[i];
            acc += std::abs(w[i]) / (spec.delta_rl1 + std::abs(prev));
        }
        return acc;
    case Penalty::lp:
        return lp_norm(w, spec.p);
    }
    return 0.0;
}

double advance(const AlgorithmSpec &spec, FilterState &state, std::span<const double> x, double d)
{
    require_same_size(state.w.size(), x.size());
    require_same_size(state.w.size(), state.w_prev.size());

    const double e = error(d, state, x);
    const double gain = spec.family == Family::gradient ? spec.mu * e : spec.mu * sgn(e);
    const double lp_factor = spec.penalty == Penalty::lp ? lp_scale(spec, state.w) : 0.0;

    // w_prev is read before it is overwritten with the new coefficient, then the buffers swap.
    bool finite = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = state.w[i];
        const double next = wi + gain * x[i] - attractor_at(spec, wi, state.w_prev[i], lp_factor);
        finite = finite && std::isfinite(next);
        state.w_prev[i] = next;
    }
    if (!finite)
        throw DivergenceError(state.n, spec.name() + " diverged at iteration " + std::to_string(state.n));

    std::swap(state.w, state.w_prev);
    ++state.n;
    return e;
}

FilterState step(const AlgorithmSpec &spec, const FilterState &state, std::span<const double> x, double d)
{
    FilterState next = state;
    advance(spec, next, x, d);
    return next;
}

} // namespace sslms
