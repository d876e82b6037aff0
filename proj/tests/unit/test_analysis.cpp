/*
   Copyright 2026 The bdec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include "analysis.hpp"
#include "errors.hpp"
#include "models.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bdec;

namespace {

PuritySeries synthetic(double rate, double beta, double tau_max, std::size_t n, double noise = 0.0,
                       std::uint64_t seed = 0)
{
    PuritySeries s;
    s.provenance = Provenance::closed_asymptotic;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = tau_max * static_cast<double>(i) / static_cast<double>(n - 1);
        const double f = noise > 0.0 ? std::exp(g(rng)) : 1.0;
        s.t.push_back(tau);
        s.tau.push_back(tau);
        s.purity.push_back(1.0 / (1.0 + beta * std::exp(rate * tau) * f));
        s.std_error.push_back(0.0);
    }
    return s;
}

} // namespace

TEST_CASE("fit recovers a synthetic exponential excess exactly")
{
    const auto s = synthetic(4.0, 1.5, 2.0, 201);
    const auto fit = fit_decoherence_rate(s);
    CHECK(fit.rate == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(1.5)).epsilon(1e-9));
    CHECK(fit.residual_rms < 1e-9);
    CHECK(fit.instability() < 1e-9);
    CHECK(fit.n_points >= 10);
}

TEST_CASE("fit over the asymptotic regime of the full exponential law")
{
    const double Lambda = 3.0;
    PuritySeries s;
    s.provenance = Provenance::closed_lyapunov;
    for (int i = 0; i <= 400; ++i) {
        const double tau = 0.01 * i;
        s.t.push_back(tau);
        s.tau.push_back(tau);
        s.purity.push_back(purity_lyapunov(tau, 1.0, 1.0, 1.0, Lambda));
        s.std_error.push_back(0.0);
    }
    const auto fit = fit_decoherence_rate(s, FitWindow{1.0, 3.0});
    CHECK(fit.rate == doctest::Approx(2.0 * Lambda).epsilon(0.03));
    CHECK(fit.window.lo >= 1.0);
    CHECK(fit.window.hi <= 3.0);
}

TEST_CASE("fit errors")
{
    PuritySeries flat;
    flat.provenance = Provenance::closed_asymptotic;
    for (int i = 0; i < 50; ++i) {
        flat.t.push_back(i);
        flat.tau.push_back(i);
        flat.purity.push_back(1.0);
        flat.std_error.push_back(0.0);
    }
    CHECK_THROWS_AS(fit_decoherence_rate(flat), FitError);
    const auto s = synthetic(4.0, 1.5, 2.0, 201);
    CHECK_THROWS_AS(fit_decoherence_rate(s, FitWindow{1.0, 1.0}), FitError);
    CHECK_THROWS_AS(fit_decoherence_rate(s, FitWindow{0.0, 0.02}), FitError);
}

TEST_CASE("fit is robust to 1% multiplicative noise")
{
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto fit = fit_decoherence_rate(synthetic(2.5, 0.3, 3.0, 201, 0.01, seed));
        if (std::abs(fit.rate / 2.5 - 1.0) < 0.02)
            ++within;
    }
    CHECK(within == 100);
}

TEST_CASE("ergodic average: analytic values")
{
    CHECK(ergodic_average(BilliardDomain::rectangle(1, 1), AnalyticAverage{}).value == doctest::Approx(1.0 / 3.0));
    CHECK(ergodic_average(BilliardDomain::disk(1), AnalyticAverage{}).value == doctest::Approx(1.0));
    CHECK(ergodic_average(BilliardDomain::disk(2), AnalyticAverage{}).value == doctest::Approx(4.0));
    const double st1 = ergodic_average(BilliardDomain::stadium(1, 1), AnalyticAverage{}).value;
    const double st2 = ergodic_average(BilliardDomain::stadium(2, 2), AnalyticAverage{}).value;
    CHECK(st2 == doctest::Approx(4.0 * st1).epsilon(1e-12));
    const double si1 = ergodic_average(BilliardDomain::sinai(2, 0.5), AnalyticAverage{}).value;
    const double si2 = ergodic_average(BilliardDomain::sinai(4, 1), AnalyticAverage{}).value;
    CHECK(si2 == doctest::Approx(4.0 * si1).epsilon(1e-12));
    CHECK(ergodic_average(BilliardDomain::rectangle(1, 1), AnalyticAverage{}).std_error == 0.0);
}

TEST_CASE("ergodic average: Monte Carlo agrees with the analytic value")
{
    for (const auto &d : {BilliardDomain::rectangle(1, 0.7), BilliardDomain::disk(1), BilliardDomain::stadium(1, 1),
                          BilliardDomain::sinai(2, 0.4)}) {
        const auto a = ergodic_average(d, AnalyticAverage{});
        const auto m = ergodic_average(d, MonteCarloAverage{200000, 9, 2});
        CHECK(std::abs(m.value - a.value) < 3.0 * m.std_error);
        const auto m1 = ergodic_average(d, MonteCarloAverage{200000, 9, 1});
        CHECK(m1.value == m.value);
    }
    CHECK_THROWS_AS(ergodic_average(BilliardDomain::disk(1), MonteCarloAverage{1, 1, 1}), RangeError);
}

TEST_CASE("bath sweep: structure, determinism and errors")
{
    const auto st = BilliardDomain::stadium(1, 1);
    const GaussianPacket p{{0, 0}, {0.6, 0.8}, 0.05};
    const PhysicalConstants c;
    SweepSettings s;
    for (int i = 0; i <= 60; ++i)
        s.times.push_back(0.1 * i);
    s.mc = {2000, 3, 2};
    s.lyapunov.t_max = 200;
    s.lyapunov.ensemble = 8;
    const auto r = bath_sweep(st, p, c, {0.01}, {5.0, 50.0}, s);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].kappa == doctest::Approx(4.0 * 0.01 * 5.0));
    CHECK(r.rows[1].temperature == 50.0);
    for (const auto &row : r.rows) {
        CHECK(row.lambda == r.lyapunov.lambda);
        if (row.ok) {
            CHECK(row.rate_t == doctest::Approx(row.rate_tau * row.gamma));
            CHECK(row.ratio == doctest::Approx(row.rate_t / (2.0 * row.lambda)));
        }
    }
    s.mc.workers = 1;
    const auto r1 = bath_sweep(st, p, c, {0.01}, {5.0, 50.0}, s);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(r1.rows[i].rate_t == r.rows[i].rate_t);
        CHECK(r1.rows[i].status == r.rows[i].status);
    }
    CHECK_THROWS_AS(bath_sweep(st, p, c, {}, {1.0}, s), RangeError);
    CHECK_THROWS_AS(bath_sweep(st, p, c, {0.1, 0.2}, {1.0, 2.0, 3.0}, s), RangeError);
}
