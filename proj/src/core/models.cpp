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

#include "models.hpp"

#include "errors.hpp"

#include <cmath>
#include <numbers>

namespace bdec {

namespace {

constexpr double kLogSpaceThreshold = 30.0;

void require_tau(double tau)
{
    if (!(tau >= 0.0))
        throw RangeError("tau must be non-negative");
}

// exp(-log_denominator), with the 1e-300 floor reported as 0.
double from_log_denominator(double log_den) { return log_den > 690.0 ? 0.0 : std::exp(-log_den); }

} // namespace

double purity_free_flight(double tau, double a1, double a2)
{
    require_tau(tau);
    const double t3 = tau * tau * tau;
    return 1.0 / (1.0 + 16.0 * a1 * tau + (2.0 / 3.0) * a2 * t3 * (1.0 + 0.5 * a1 * tau));
}

double purity_free_flight_gaussian(double tau, double a1, double a2)
{
    require_tau(tau);
    const double t3 = tau * tau * tau;
    return 1.0 / (1.0 + 8.0 * a1 * tau + (4.0 / 3.0) * a2 * t3 * (1.0 + 2.0 * a1 * tau));
}

double purity_ergodic(double tau, double tau_o, double kT_over_Delta)
{
    if (tau < tau_o)
        throw RangeError("the ergodic law applies only for tau >= tau_o");
    return std::exp(-16.0 * std::numbers::pi * kT_over_Delta * (tau - tau_o));
}

double purity_lyapunov(double tau, double b1, double b2, double b3, double Lambda)
{
    require_tau(tau);
    if (!(Lambda > 0.0))
        throw DomainError("Lambda must be positive");
    const double x = 2.0 * Lambda * tau;
    if (x <= kLogSpaceThreshold) {
        const double den = 1.0 + b1 * ((1.0 + b2) * std::sinh(x) + (1.0 - b2) * x) +
                           b3 * (std::cosh(x) - 0.5 * x * x - 1.0);
        return 1.0 / den;
    }
    // Scale everything by e^{-x}: sinh and cosh become (1 -+ e^{-2x}) / 2.
    const double ex = std::exp(-x);
    const double e2x = ex * ex;
    const double scaled = ex + b1 * ((1.0 + b2) * 0.5 * (1.0 - e2x) + (1.0 - b2) * x * ex) +
                          b3 * (0.5 * (1.0 + e2x) - (0.5 * x * x + 1.0) * ex);
    return from_log_denominator(x + std::log(scaled));
}

double purity_lyapunov_asymptotic(double tau, double beta, double Lambda)
{
    require_tau(tau);
    const double x = 2.0 * Lambda * tau;
    if (x <= kLogSpaceThreshold)
        return 1.0 / (1.0 + beta * std::exp(x));
    return from_log_denominator(x + std::log(beta + std::exp(-x)));
}

} // namespace bdec
