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

#include "errors.hpp"
#include "initial_state.hpp"
#include "models.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bdec;

TEST_CASE("free-flight law: examples")
{
    CHECK(purity_free_flight(0.0, 1.0, 1.0) == 1.0);
    CHECK(purity_free_flight(0.1, 1.0, 1.0) == doctest::Approx(1.0 / 2.6007).epsilon(1e-12));
    CHECK(purity_free_flight(0.1, 1.0, 1.0) == doctest::Approx(0.384512).epsilon(1e-6));
    CHECK_THROWS_AS(purity_free_flight(-0.1, 1.0, 1.0), RangeError);
}

TEST_CASE("free-flight law: small-tau slope")
{
    for (double a1 : {0.5, 2.0, 10.0}) {
        const double tau = 1e-6;
        const double slope = (1.0 / purity_free_flight(tau, a1, 3.0) - 1.0) / tau;
        CHECK(slope == doctest::Approx(16.0 * a1).epsilon(1e-4));
    }
}

TEST_CASE("recomputed free-flight average")
{
    CHECK(purity_free_flight_gaussian(0.0, 2.0, 3.0) == 1.0);
    const double tau = 0.05, a1 = 2.0, a2 = 3.0;
    const double d = 1.0 + 8.0 * a1 * tau + 4.0 / 3.0 * a2 * tau * tau * tau * (1.0 + 2.0 * a1 * tau);
    CHECK(purity_free_flight_gaussian(tau, a1, a2) == doctest::Approx(1.0 / d).epsilon(1e-15));
}

TEST_CASE("ergodic law")
{
    CHECK(purity_ergodic(0.3, 0.3, 2.0) == 1.0);
    // exp(-0.16 pi) = 0.6049225...
    CHECK(purity_ergodic(0.31, 0.3, 1.0) == doctest::Approx(0.6049225).epsilon(1e-6));
    CHECK(purity_ergodic(0.31, 0.3, 1.0) == doctest::Approx(std::exp(-0.16 * std::numbers::pi)).epsilon(1e-13));
    CHECK_THROWS_AS(purity_ergodic(0.2, 0.3, 1.0), RangeError);
}

TEST_CASE("ergodic law exponent equals the bath exponent with Q^2 = A")
{
    Engine rng = stream_engine(12, 0, 0);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const PhysicalConstants c{u(rng), u(rng), u(rng)};
        const BathParams b{u(rng), u(rng)};
        const GaussianPacket p{{0, 0}, {1, 0}, u(rng)};
        const double area = u(rng), t_o = u(rng), dt = u(rng);
        const auto m = derived_params(p, b, c, std::nullopt, area, t_o);
        const double lhs = 16.0 * std::numbers::pi * m.kT_over_Delta * b.gamma * dt;
        const double rhs = 2.0 * b.kappa(c) / (c.hbar * c.hbar) * area * dt;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
}

TEST_CASE("Lyapunov law: examples and bracket identities")
{
    CHECK(purity_lyapunov(0.0, 1, 1, 1, 2) == 1.0);
    CHECK(purity_lyapunov(0.5, 1, 1, 1, 2) == doctest::Approx(0.110915).epsilon(1e-5));
    const double x = 2.0;
    CHECK(purity_lyapunov(0.5, 1, 1, 1, 2) ==
          doctest::Approx(1.0 / (1.0 + 2.0 * std::sinh(x) + std::cosh(x) - x * x / 2.0 - 1.0)).epsilon(1e-14));
    // b2 = 1, b3 = 0: pure sinh form.
    for (double tau : {0.01, 0.3, 2.0}) {
        const double b1 = 0.7, L = 1.5;
        CHECK(purity_lyapunov(tau, b1, 1.0, 0.0, L) ==
              doctest::Approx(1.0 / (1.0 + 2.0 * b1 * std::sinh(2.0 * L * tau))).epsilon(1e-14));
        // Third bracket is non-negative.
        CHECK(purity_lyapunov(tau, b1, 0.4, 0.9, L) <= purity_lyapunov(tau, b1, 0.4, 0.0, L));
    }
    CHECK_THROWS_AS(purity_lyapunov(0.1, 1, 1, 1, 0.0), DomainError);
}

TEST_CASE("Lyapunov law: log-space evaluation for large arguments")
{
    const double tau = 40.0, L = 2.0; // x = 160
    const double p = purity_lyapunov(tau, 1.0, 1.0, 1.0, L);
    const double logd = std::log(0.5 * (2.0 + 1.0)) + 2.0 * L * tau;
    CHECK(p > 0.0);
    CHECK(std::log(p) == doctest::Approx(-logd).epsilon(1e-12));
    CHECK(purity_lyapunov(1e4, 1.0, 1.0, 1.0, L) == 0.0);
}

TEST_CASE("asymptotic law")
{
    CHECK(purity_lyapunov_asymptotic(2.5, 1.5, 2.0) == doctest::Approx(1.0 / (1.0 + 1.5 * std::exp(10.0))).epsilon(1e-14));
    CHECK(purity_lyapunov_asymptotic(2.5, 1.5, 2.0) == doctest::Approx(3.0263e-5).epsilon(1e-4));
    CHECK(purity_lyapunov_asymptotic(0.0, 1.5, 2.0) == doctest::Approx(1.0 / 2.5));
    // Dominant-term truncation of the full law.
    const double b1 = 0.8, b2 = 1.2, b3 = 0.6, L = 2.0;
    const double beta = asymptotic_beta(b1, b2, b3);
    for (double lt : {5.0, 6.0, 8.0}) {
        const double full = purity_lyapunov(lt / L, b1, b2, b3, L);
        const double asym = purity_lyapunov_asymptotic(lt / L, beta, L);
        CHECK(std::abs(asym / full - 1.0) < 0.01);
        if (lt == 8.0)
            CHECK(std::abs(asym / full - 1.0) < 1e-3);
    }
}

TEST_CASE("all laws lie in (0, 1] and are non-increasing")
{
    Engine rng = stream_engine(13, 0, 0);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int s = 0; s < 10000; ++s) {
        const double a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng), b3 = u(rng), L = u(rng), k = u(rng);
        const double beta = asymptotic_beta(b1, b2, b3), tau_o = 0.1 * u(rng);
        double prev[5] = {2, 2, 2, 2, 2};
        for (int i = 0; i < 100; ++i) {
            const double tau = 0.02 * i;
            const double v[5] = {purity_free_flight(tau, a1, a2), purity_free_flight_gaussian(tau, a1, a2),
                                 purity_lyapunov(tau, b1, b2, b3, L), purity_lyapunov_asymptotic(tau, beta, L),
                                 tau >= tau_o ? purity_ergodic(tau, tau_o, k) : 1.0};
            for (int j = 0; j < 5; ++j) {
                if (!(v[j] >= 0.0 && v[j] <= 1.0 && v[j] <= prev[j]))
                    FAIL("law " << j << " misbehaves at tau=" << tau);
                prev[j] = v[j];
            }
        }
    }
}
