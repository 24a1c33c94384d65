// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "doctest.h"
#include "sslms/adaptive_filter.hpp"
#include "sslms/errors.hpp"
#include "sslms/rng.hpp"

using namespace sslms;

namespace {

AlgorithmSpec make(const char *name, double mu = 0.1)
{
    auto spec = algorithm_from_name(name);
    spec.mu = mu;
    return spec;
}

FilterState state_of(std::vector<double> w, std::vector<double> w_prev = {})
{
    if (w_prev.empty())
        w_prev.assign(w.size(), 0.0);
    return FilterState{std::move(w), std::move(w_prev), 0};
}

// Zero-free vector with entries of magnitude in [0.1, 2].
std::vector<double> zero_free(Rng &rng, std::size_t n)
{
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    std::bernoulli_distribution neg(0.5);
    std::vector<double> w(n);
    for (auto &v : w)
        v = neg(rng) ? -mag(rng) : mag(rng);
    return w;
}

// Central difference of penalty_value along coordinate i.
double fd_gradient(const AlgorithmSpec &spec, std::vector<double> w, const std::vector<double> &w_prev,
                   std::size_t i, double h)
{
    const double w0 = w[i];
    w[i] = w0 + h;
    const double up = penalty_value(spec, w, w_prev);
    w[i] = w0 - h;
    const double down = penalty_value(spec, w, w_prev);
    return (up - down) / (2.0 * h);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("sign")
{
    CHECK(sign(std::vector<double>{3.2, 0.0, -0.5}) == std::vector<double>{1.0, 0.0, -1.0});
    CHECK(sign(std::vector<double>(4, 0.0)) == std::vector<double>(4, 0.0));
    CHECK(sign(std::vector<double>{-1e-300}) == std::vector<double>{-1.0});
    CHECK(sign(std::vector<double>{-0.0}) == std::vector<double>{0.0});
}

TEST_CASE("predict and error")
{
    CHECK(predict(state_of({1.0, 2.0}), std::vector<double>{3.0, 4.0}) == 11.0);
    CHECK(predict(state_of({0.0, 0.0}), std::vector<double>{3.0, 4.0}) == 0.0);
    CHECK(predict(state_of({0.5}), std::vector<double>{2.0}) == 1.0);

    CHECK(error(0.5, state_of({0.0, 0.0}), std::vector<double>{1.0, -1.0}) == 0.5);
    const auto s = state_of({0.3, -0.7});
    const std::vector<double> x{1.5, 2.5};
    CHECK(error(predict(s, x), s, x) == 0.0);
    CHECK(error(1.0, state_of({1.0}), std::vector<double>{1.0}) == 0.0);

    CHECK_THROWS_AS(predict(state_of({1.0, 2.0}), std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(error(0.0, state_of({1.0}), std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("single-step hand evaluations")
{
    {
        const auto next = step(make("slms"), state_of({0.0, 0.0}), std::vector<double>{1.0, -1.0}, 0.5);
        CHECK(std::abs(next.w[0] - 0.1) <= 1e-15);
        CHECK(std::abs(next.w[1] + 0.1) <= 1e-15);
    }
    {
        auto spec = make("slms-za");
        spec.rho_za = 0.01;
        const auto next = step(spec, state_of({0.2}), std::vector<double>{1.0}, 0.0);
        CHECK(std::abs(next.w[0] - 0.09) <= 1e-15);
    }
    for (const auto &name : algorithm_names()) {
        if (name.find('-') != std::string::npos)
            continue;
        const auto s = state_of({0.4, -1.3, 0.0});
        const auto next = step(make(name.c_str()), s, std::vector<double>(3, 0.0), 0.0);
        CHECK(next.w == s.w);
    }
}

TEST_CASE("step bookkeeping")
{
    const auto spec = make("slms-rl1");
    const auto s = state_of({0.2, -0.1}, {9.0, 9.0});
    const std::vector<double> x{1.0, 2.0};
    const auto next = step(spec, s, x, 0.3);
    CHECK(next.w_prev == s.w);
    CHECK(next.n == 1);
    CHECK(s.w == std::vector<double>{0.2, -0.1}); // input untouched

    auto in_place = s;
    const double e = advance(spec, in_place, x, 0.3);
    CHECK(e == doctest::Approx(0.3 - (0.2 - 0.2)));
    CHECK(in_place.w == next.w);
    CHECK(in_place.w_prev == next.w_prev);
}

TEST_CASE("every sub-rule matches its closed form")
{
    Rng rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    for (const auto &name : algorithm_names()) {
        auto spec = make(name.c_str(), 0.03);
        spec.rho_za = 0.011;
        spec.rho_rza = 0.013;
        spec.eps_rza = 7.0;
        spec.rho_rl1 = 0.002;
        spec.delta_rl1 = 0.2;
        spec.rho_lp = 0.004;
        spec.eps_lp = 0.1;
        spec.p = 0.3;

        std::vector<double> w(6), wp(6), x(6);
        for (std::size_t i = 0; i < 6; ++i) {
            w[i] = g(rng);
            wp[i] = g(rng);
            x[i] = g(rng);
        }
        w[2] = 0.0;
        const double d = g(rng);
        const auto next = step(spec, state_of(w, wp), x, d);

        double y = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            y += w[i] * x[i];
        const double e = d - y;
        const double gain = spec.family == Family::gradient ? spec.mu * e : spec.mu * ((e > 0) - (e < 0));
        double lp_sum = 0.0;
        for (double v : w)
            lp_sum += std::pow(std::abs(v), spec.p);
        const double lp_norm = std::pow(lp_sum, 1.0 / spec.p);

        for (std::size_t i = 0; i < 6; ++i) {
            const double s = (w[i] > 0) - (w[i] < 0);
            double a = 0.0;
            switch (spec.penalty) {
            case Penalty::none: a = 0.0; break;
            case Penalty::za: a = spec.rho_za * s; break;
            case Penalty::rza: a = spec.rho_rza * s / (1.0 + spec.eps_rza * std::abs(w[i])); break;
            case Penalty::rl1: a = spec.rho_rl1 * s / (spec.delta_rl1 + std::abs(wp[i])); break;
            case Penalty::lp:
                a = spec.rho_lp * std::pow(lp_norm, 1.0 - spec.p) * s /
                    (spec.eps_lp + std::pow(std::abs(w[i]), 1.0 - spec.p));
                break;
            }
            CAPTURE(name);
            CHECK(next.w[i] == doctest::Approx(w[i] + gain * x[i] - a).epsilon(1e-14));
        }
        CHECK(next.w[2] == doctest::Approx(gain * x[2]).epsilon(1e-14));
    }
}

TEST_CASE("textbook LMS equivalence, bit for bit")
{
    Rng rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n_taps = 12;
    const auto spec = make("lms", 0.01);

    auto state = FilterState::zeros(n_taps);
    std::vector<double> oracle(n_taps, 0.0);
    std::vector<double> x(n_taps);
    for (int n = 0; n < 2000; ++n) {
        for (auto &v : x)
            v = g(rng);
        const double d = g(rng);

        double y = 0.0;
        for (std::size_t i = 0; i < n_taps; ++i)
            y += oracle[i] * x[i];
        const double e = d - y;
        for (std::size_t i = 0; i < n_taps; ++i)
            oracle[i] += spec.mu * e * x[i];

        state = step(spec, state, x, d);
        REQUIRE(state.w == oracle);
    }
}

TEST_CASE("bounded sign update")
{
    Rng rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    std::cauchy_distribution<double> impulsive(0.0, 100.0);
    const auto spec = make("slms", 0.005);
    auto state = FilterState::zeros(16);
    std::vector<double> x(16);
    for (int n = 0; n < 500; ++n) {
        double xmax = 0.0;
        for (auto &v : x) {
            v = g(rng);
            xmax = std::max(xmax, std::abs(v));
        }
        const auto next = step(spec, state, x, impulsive(rng));
        double change = 0.0;
        double wmax = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            change = std::max(change, std::abs(next.w[i] - state.w[i]));
            wmax = std::max(wmax, std::abs(state.w[i]));
        }
        // Bound holds exactly up to the rounding of w + g.
        const double ulp = std::numeric_limits<double>::epsilon();
        CHECK(change <= spec.mu * xmax * (1.0 + ulp) + 2.0 * ulp * (wmax + spec.mu * xmax));
        state = next;
    }
}

TEST_CASE("pure zero attraction")
{
    auto spec = make("slms-za");
    spec.rho_za = 0.01;
    FilterState state = state_of({0.5, -0.3, 0.0, 0.02});
    const std::vector<double> zero(4, 0.0);
    for (int n = 0; n < 1; ++n) {
        const auto next = step(spec, state, zero, 0.0);
        CHECK(next.w[0] == doctest::Approx(0.49).epsilon(1e-15));
        CHECK(next.w[1] == doctest::Approx(-0.29).epsilon(1e-15));
        CHECK(next.w[2] == 0.0);
        CHECK(next.w[3] == doctest::Approx(0.01).epsilon(1e-12));
        state = next;
    }
    state = state_of({0.5});
    for (int n = 0; n < 40; ++n) {
        const double before = std::abs(state.w[0]);
        state = step(spec, state, std::vector<double>{0.0}, 0.0);
        CHECK(before - std::abs(state.w[0]) == doctest::Approx(0.01).epsilon(1e-9));
    }
}

TEST_CASE("RZA attractor shrinks with tap magnitude")
{
    auto spec = make("slms-rza");
    std::vector<double> w;
    for (int i = 0; i <= 50; ++i)
        w.push_back(0.01 + 0.04 * i);
    const auto a = attractor(spec, state_of(w));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(spec.rho_rza / (1.0 + spec.eps_rza * w[i])));
        if (i > 0)
            CHECK(a[i] < a[i - 1]);
    }
}

TEST_CASE("zero is a fixed point of every attractor")
{
    for (const auto &name : algorithm_names()) {
        const auto a = attractor(make(name.c_str()), FilterState::zeros(8));
        CHECK(a == std::vector<double>(8, 0.0));
        const auto next = step(make(name.c_str()), FilterState::zeros(8), std::vector<double>(8, 1.0), 0.0);
        CHECK(next.w == std::vector<double>(8, 0.0));
    }
}

TEST_CASE("RL1 startup weights are 1/delta")
{
    const auto spec = make("slms-rl1");
    const auto a = attractor(spec, state_of({0.3, -2.0, 0.0}));
    CHECK(a[0] == doctest::Approx(spec.rho_rl1 / spec.delta_rl1));
    CHECK(a[1] == doctest::Approx(-spec.rho_rl1 / spec.delta_rl1));
    CHECK(a[2] == 0.0);
}

TEST_CASE("penalty values")
{
    CHECK(penalty_value(make("slms-za"), std::vector<double>{1.0, -2.0, 0.0}) == 3.0);
    CHECK(penalty_value(make("slms-rza"), std::vector<double>{0.0}) == 0.0);
    CHECK(penalty_value(make("slms-lp"), std::vector<double>{4.0}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(penalty_value(make("slms"), std::vector<double>{4.0}) == 0.0);
    CHECK(penalty_value(make("slms-rl1"), std::vector<double>{1.0, -1.0}, std::vector<double>{0.95, 0.0}) ==
          doctest::Approx(1.0 + 20.0));
}

TEST_CASE("attractors are scaled penalty gradients")
{
    Rng rng(2718);
    const double h = 1e-7;
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = zero_free(rng, 16);
        const auto w_prev = zero_free(rng, 16);
        const auto state = state_of(w, w_prev);

        const auto za = make("slms-za");
        const auto rza = make("slms-rza");
        const auto rl1 = make("slms-rl1");
        const auto a_za = attractor(za, state);
        const auto a_rza = attractor(rza, state);
        const auto a_rl1 = attractor(rl1, state);
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(rel_err(a_za[i], za.rho_za * fd_gradient(za, w, w_prev, i, h)) <= 1e-6);
            CHECK(rel_err(a_rza[i], rza.rho_rza / rza.eps_rza * fd_gradient(rza, w, w_prev, i, h)) <= 1e-6);
            CHECK(rel_err(a_rl1[i], rl1.rho_rl1 * fd_gradient(rl1, w, w_prev, i, h)) <= 1e-6);
        }
    }
}

TEST_CASE("LP attractor tends to the p-norm gradient")
{
    Rng rng(1414);
    for (double eps : {0.05, 1e-3, 1e-9}) {
        auto lp = make("slms-lp");
        lp.eps_lp = eps;
        for (int trial = 0; trial < 100; ++trial) {
            const auto w = zero_free(rng, 16);
            double min_abs = 1e300;
            for (double v : w)
                min_abs = std::min(min_abs, std::abs(v));
            const double tol = std::max(1e-4, eps / std::pow(min_abs, 1.0 - lp.p));

            const auto a = attractor(lp, state_of(w));
            for (std::size_t i = 0; i < w.size(); ++i)
                CHECK(rel_err(a[i], lp.rho_lp * fd_gradient(lp, w, {}, i, 1e-7)) <= tol);
        }
    }
}

TEST_CASE("divergence guard")
{
    auto spec = make("lms", 1e300);
    auto state = state_of({0.0, 0.0});
    state.n = 41;
    try {
        advance(spec, state, std::vector<double>{1e10, 1e10}, 1e10);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError &err) {
        CHECK(err.iteration() == 41);
    }
    CHECK_THROWS_AS(step(spec, state_of({0.0}), std::vector<double>{1e200}, 1e200), DivergenceError);
}

TEST_CASE("spec validation and names")
{
    CHECK(algorithm_names().size() == 10);
    for (const auto &name : algorithm_names())
        CHECK(algorithm_from_name(name).name() == name);
    CHECK_THROWS_AS(algorithm_from_name("nlms"), ParameterError);

    auto spec = make("slms-lp");
    CHECK(spec.p == 0.5);
    spec.p = 1.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec = make("slms");
    spec.mu = 0.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec = make("slms-za");
    spec.rho_za = -1.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec = make("slms-rl1");
    spec.delta_rl1 = 0.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
}
