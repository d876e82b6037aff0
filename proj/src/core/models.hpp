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

#pragma once

namespace bdec {

/// Dimensionless groups feeding the closed-form purity laws.
struct ModelParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    double beta = 0.0;
    double Lambda = 0.0; // lambda / gamma
    double tau_o = 0.0;  // gamma t_o
    double kT_over_Delta = 0.0;
    bool has_lyapunov = false;
};

/// beta = b1 (1 + b2) / 2 + b3 / 2.
constexpr double asymptotic_beta(double b1, double b2, double b3) { return 0.5 * b1 * (1.0 + b2) + 0.5 * b3; }

// Closed-form purity laws in tau = gamma t. All return values in [0, 1].

/// Free-flight regime, 0 <= tau <= tau_o:
/// [1 + 16 a1 tau + (2/3) a2 tau^3 (1 + a1 tau / 2)]^-1.
double purity_free_flight(double tau, double a1, double a2);

/// Value of the Gaussian phase-space average for free flight, recomputed
/// from the Wigner function of the packet:
/// [1 + 8 a1 tau + (4/3) a2 tau^3 (1 + 2 a1 tau)]^-1.
/// It differs from purity_free_flight in all three coefficients.
double purity_free_flight_gaussian(double tau, double a1, double a2);

/// Uncorrelated trajectories after tau_o: exp(-16 pi (kT/Delta) (tau - tau_o)).
/// Throws RangeError for tau < tau_o.
double purity_ergodic(double tau, double tau_o, double kT_over_Delta);

/// Trajectories correlated by Lyapunov spreading, x = 2 Lambda tau:
/// {1 + b1[(1+b2) sinh x + (1-b2) x] + b3[cosh x - x^2/2 - 1]}^-1.
/// Evaluated in log space once x > 30.
double purity_lyapunov(double tau, double b1, double b2, double b3, double Lambda);

/// Dominant-exponential form (1 + beta e^{2 Lambda tau})^-1.
double purity_lyapunov_asymptotic(double tau, double beta, double Lambda);

} // namespace bdec
