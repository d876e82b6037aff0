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

#include "geometry.hpp"
#include "models.hpp"

#include <cstddef>
#include <optional>

namespace bdec {

/// hbar, particle mass and Boltzmann constant. Natural units by default.
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
    double kB = 1.0;

    /// Throws DomainError unless all three are positive and finite.
    void validate() const;
};

/// Ohmic bath in the high-temperature, weak-dissipation limit.
struct BathParams {
    double gamma = 0.0;       // friction constant, 1/time
    double temperature = 0.0;

    /// Throws DomainError for negative or non-finite values. Zero is allowed
    /// (an uncoupled bath) but makes diffusion() undefined.
    void validate() const;

    /// Noise strength kappa = 4 m gamma kB T.
    double kappa(const PhysicalConstants &c) const { return 4.0 * c.mass * gamma * c.kB * temperature; }
    /// D = 4 kB T / (m gamma).
    double diffusion(const PhysicalConstants &c) const { return 4.0 * c.kB * temperature / (c.mass * gamma); }
};

/// Minimum-uncertainty Gaussian wave packet centered at (r_o, p_o).
struct GaussianPacket {
    Vec2 r_o;
    Vec2 p_o;
    double sigma = 0.0;

    void validate() const;

    /// E-bar = hbar^2 / (2 m sigma^2).
    double energy_scale(const PhysicalConstants &c) const { return c.hbar * c.hbar / (2.0 * c.mass * sigma * sigma); }
    /// Per-component standard deviations of the Wigner function.
    double position_spread() const;
    double momentum_spread(const PhysicalConstants &c) const;
};

/// (1/(pi hbar))^2 exp(-(r-r_o)^2/sigma^2 - sigma^2 (p-p_o)^2/hbar^2).
double wigner_density(const GaussianPacket &packet, const PhysicalConstants &c, Vec2 r, Vec2 p);

struct PhasePoint {
    Vec2 r;
    Vec2 p;
};

/// Draw from the Wigner function: independent normals with standard
/// deviations sigma/sqrt(2) in position and hbar/(sigma sqrt(2)) in momentum.
PhasePoint sample_phase_point(const GaussianPacket &packet, const PhysicalConstants &c, Engine &rng);

/// As sample_phase_point, redrawing until the position lies inside
/// `domain`. Adds the number of redraws to `rejected`.
PhasePoint sample_phase_point_in(const BilliardDomain &domain, const GaussianPacket &packet,
                                 const PhysicalConstants &c, Engine &rng, std::size_t &rejected);

/// Which value of b1 (and hence beta) derived_params reports.
enum class LyapunovCoefficients {
    /// b1 = (1/Lambda) kB T / E-bar, as the closed-form law is usually quoted.
    published,
    /// b1 = (2/Lambda) kB T / E-bar, the value for which the closed-form law
    /// equals the Gaussian phase-space average of the exponential separation
    /// model (b2, b3 are unchanged).
    gaussian_average,
};

/// Dimensionless groups from physical inputs. `lambda` may be omitted when
/// only free-flight and ergodic groups are needed; when given it must be
/// positive (DomainError otherwise).
ModelParams derived_params(const GaussianPacket &packet, const BathParams &bath, const PhysicalConstants &c,
                           std::optional<double> lambda, double area, double t_o,
                           LyapunovCoefficients coefficients = LyapunovCoefficients::published);

} // namespace bdec
