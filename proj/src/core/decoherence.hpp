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

#include "dynamics.hpp"
#include "initial_state.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace bdec {

enum class Provenance {
    monte_carlo,
    quadrature_lyapunov,
    quadrature_free_flight,
    quadrature_ergodic,
    closed_free_flight,
    closed_ergodic,
    closed_lyapunov,
    closed_asymptotic,
};

/// Stable identifiers used in reports ("monte-carlo", "quadrature-eq17", ...).
std::string_view to_string(Provenance p);

/// Purity on a time grid. `t` is physical time, `tau` = gamma t.
struct PuritySeries {
    std::vector<double> t;
    std::vector<double> tau;
    std::vector<double> purity;
    std::vector<double> std_error;
    Provenance provenance = Provenance::monte_carlo;
    std::size_t n_pairs = 0;

    // Monte Carlo bookkeeping.
    std::size_t draws = 0;
    std::size_t rejected_draws = 0;
    std::size_t tangency_resamples = 0;
    /// Set when some purity fell below 1e-300 and was reported as 0.
    bool underflow = false;

    std::size_t size() const { return t.size(); }
    double rejection_rate() const;
    /// More than 1% of packet draws landed outside the table.
    bool rejection_warning() const { return rejection_rate() > 0.01; }
};

/// Exact integral of |q_b(s) - q_a(s)|^2 over [0, t].
/// Throws RangeError if t exceeds either horizon.
double integrate_sq_separation(const Trajectory &a, const Trajectory &b, double t);

/// The same integral at every time of a non-decreasing grid, in one pass
/// over the merged breakpoints.
std::vector<double> cumulative_sq_separation(const Trajectory &a, const Trajectory &b,
                                             std::span<const double> times);

/// 2 kappa / hbar^2.
double decoherence_rate_scale(const BathParams &bath, const PhysicalConstants &c);

/// exp(-2 kappa integral / hbar^2); 0 once the exponent passes 745.
double decoherence_factor(double sq_separation_integral, const BathParams &bath, const PhysicalConstants &c);

struct MonteCarloOptions {
    std::size_t n_pairs = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Independent initial conditions for the two trajectories of pair `index`,
/// both drawn from the packet's Wigner function and propagated to t_max.
/// Pairs that hit a grazing or corner collision are redrawn.
struct SampledPair {
    Trajectory a;
    Trajectory b;
    std::size_t draws;
    std::size_t rejected_draws;
    std::size_t tangency_resamples;
};

SampledPair sample_pair(const BilliardDomain &domain, const GaussianPacket &packet, const PhysicalConstants &c,
                        double t_max, std::uint64_t seed, std::uint64_t index);

/// Monte Carlo purity: mean over pairs of the decoherence factor evaluated
/// along true billiard trajectories. `times` are physical times, sorted,
/// non-negative. Requires n_pairs >= 100. The result does not depend on
/// the worker count.
PuritySeries purity_mc(const BilliardDomain &domain, const GaussianPacket &packet, const BathParams &bath,
                       const PhysicalConstants &c, std::span<const double> times, const MonteCarloOptions &opts);

/// Straight-line separation dr + s dp / m.
struct FreeFlightSeparation {};

/// Separation dr cosh(lambda s) + dp / (m lambda) sinh(lambda s), applied to
/// each Cartesian component.
struct LyapunovSeparation {
    double lambda;
};

/// Constant squared separation after t_o; no decay before t_o.
struct ErgodicSeparation {
    double mean_sq_separation;
    double t_o;
};

using SeparationModel = std::variant<FreeFlightSeparation, LyapunovSeparation, ErgodicSeparation>;

enum class GaussianAverage {
    /// Rotate to the principal axes and integrate each axis numerically.
    numerical,
    /// 1 / det(I + 2 G) in closed form.
    determinant,
};

/// Phase-space average of the decoherence factor under a model separation,
/// with the s-integral done in closed form and the Gaussian average over
/// the two initial conditions done per Cartesian component.
PuritySeries purity_quadrature(const SeparationModel &model, const GaussianPacket &packet, const BathParams &bath,
                               const PhysicalConstants &c, std::span<const double> times,
                               GaussianAverage method = GaussianAverage::numerical);

} // namespace bdec
