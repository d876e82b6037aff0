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

#include "initial_state.hpp"

#include "errors.hpp"

#include <cmath>
#include <numbers>

namespace bdec {

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

void PhysicalConstants::validate() const
{
    if (!positive(hbar) || !positive(mass) || !positive(kB))
        throw DomainError("hbar, mass and kB must be positive");
}

void BathParams::validate() const
{
    if (!(std::isfinite(gamma) && gamma >= 0.0) || !(std::isfinite(temperature) && temperature >= 0.0))
        throw DomainError("bath gamma and T must be non-negative");
}

void GaussianPacket::validate() const
{
    if (!positive(sigma))
        throw DomainError("packet sigma must be positive");
    if (!std::isfinite(r_o.x) || !std::isfinite(r_o.y) || !std::isfinite(p_o.x) || !std::isfinite(p_o.y))
        throw DomainError("packet center must be finite");
}

double GaussianPacket::position_spread() const { return sigma / std::numbers::sqrt2; }

double GaussianPacket::momentum_spread(const PhysicalConstants &c) const
{
    return c.hbar / (sigma * std::numbers::sqrt2);
}

double wigner_density(const GaussianPacket &packet, const PhysicalConstants &c, Vec2 r, Vec2 p)
{
    const double norm_factor = 1.0 / (std::numbers::pi * c.hbar);
    const double s2 = packet.sigma * packet.sigma;
    const double exponent = -norm2(r - packet.r_o) / s2 - s2 * norm2(p - packet.p_o) / (c.hbar * c.hbar);
    return norm_factor * norm_factor * std::exp(exponent);
}

PhasePoint sample_phase_point(const GaussianPacket &packet, const PhysicalConstants &c, Engine &rng)
{
    std::normal_distribution<double> gauss;
    const double sr = packet.position_spread();
    const double sp = packet.momentum_spread(c);
    PhasePoint pt;
    pt.r.x = packet.r_o.x + sr * gauss(rng);
    pt.r.y = packet.r_o.y + sr * gauss(rng);
    pt.p.x = packet.p_o.x + sp * gauss(rng);
    pt.p.y = packet.p_o.y + sp * gauss(rng);
    return pt;
}

PhasePoint sample_phase_point_in(const BilliardDomain &domain, const GaussianPacket &packet,
                                 const PhysicalConstants &c, Engine &rng, std::size_t &rejected)
{
    for (;;) {
        auto pt = sample_phase_point(packet, c, rng);
        if (domain.contains(pt.r) && norm(pt.p) > 0.0)
            return pt;
        ++rejected;
    }
}

ModelParams derived_params(const GaussianPacket &packet, const BathParams &bath, const PhysicalConstants &c,
                           std::optional<double> lambda, double area, double t_o,
                           LyapunovCoefficients coefficients)
{
    packet.validate();
    c.validate();
    if (!positive(bath.gamma) || !positive(bath.temperature))
        throw DomainError("derived parameters need gamma > 0 and T > 0");
    if (!positive(area))
        throw DomainError("area must be positive");
    if (!(std::isfinite(t_o) && t_o >= 0.0))
        throw DomainError("t_o must be non-negative");

    const double kT = c.kB * bath.temperature;
    const double ebar = packet.energy_scale(c);
    const double s2 = packet.sigma * packet.sigma;

    ModelParams m;
    m.a1 = kT / ebar;
    m.a2 = bath.diffusion(c) / (bath.gamma * s2);
    m.tau_o = bath.gamma * t_o;
    const double level_spacing = 2.0 * std::numbers::pi * c.hbar * c.hbar / (c.mass * area);
    m.kT_over_Delta = kT / level_spacing;

    if (lambda) {
        const double lam = *lambda;
        if (!positive(lam))
            throw DomainError("Lyapunov exponent must be positive");
        m.Lambda = lam / bath.gamma;
        const double scale = coefficients == LyapunovCoefficients::published ? 1.0 : 2.0;
        m.b1 = scale * m.a1 / m.Lambda;
        const double r = 2.0 * ebar / (c.hbar * lam);
        m.b2 = r * r;
        const double q = kT / (m.Lambda * c.hbar * lam);
        m.b3 = 32.0 * q * q;
        m.beta = asymptotic_beta(m.b1, m.b2, m.b3);
        m.has_lyapunov = true;
    }
    return m;
}

} // namespace bdec
