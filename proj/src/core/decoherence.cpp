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

#include "decoherence.hpp"

#include "errors.hpp"
#include "parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bdec {

std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::monte_carlo:
        return "monte-carlo";
    case Provenance::quadrature_lyapunov:
        return "quadrature-eq17";
    case Provenance::quadrature_free_flight:
        return "quadrature-eq18";
    case Provenance::quadrature_ergodic:
        return "quadrature-ergodic";
    case Provenance::closed_free_flight:
        return "closed-form-21";
    case Provenance::closed_ergodic:
        return "closed-form-22";
    case Provenance::closed_lyapunov:
        return "closed-form-23";
    case Provenance::closed_asymptotic:
        return "closed-form-24";
    }
    return "unknown";
}

double PuritySeries::rejection_rate() const
{
    return draws == 0 ? 0.0 : static_cast<double>(rejected_draws) / static_cast<double>(draws);
}

namespace {

void require_time_grid(std::span<const double> times)
{
    if (times.empty())
        throw RangeError("time grid is empty");
    if (!(times.front() >= 0.0))
        throw RangeError("time grid must be non-negative");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] >= times[i - 1]))
            throw RangeError("time grid must be sorted");
    if (!std::isfinite(times.back()))
        throw RangeError("time grid must be finite");
}

// Integral of |d + w s|^2 over s in [0, h].
double segment_integral(Vec2 d, Vec2 w, double h)
{
    const double v = norm2(d) * h + dot(d, w) * h * h + norm2(w) * h * h * h / 3.0;
    return std::max(v, 0.0);
}

} // namespace

std::vector<double> cumulative_sq_separation(const Trajectory &a, const Trajectory &b, std::span<const double> times)
{
    std::vector<double> out;
    if (times.empty())
        return out;
    require_time_grid(times);
    if (times.back() > a.horizon() || times.back() > b.horizon())
        throw RangeError("integration time exceeds a trajectory horizon");

    const auto &pa = a.breakpoints();
    const auto &pb = b.breakpoints();
    // Segment k spans [p[k].t, p[k+1].t]; the last segment index is size-2.
    std::size_t ia = 0, ib = 0;
    const std::size_t last_a = pa.size() - 2, last_b = pb.size() - 2;
    double cur = 0.0;
    double acc = 0.0;
    out.reserve(times.size());

    for (double target : times) {
        while (cur < target) {
            while (ia < last_a && pa[ia + 1].t <= cur)
                ++ia;
            while (ib < last_b && pb[ib + 1].t <= cur)
                ++ib;
            double next = target;
            if (ia < last_a)
                next = std::min(next, pa[ia + 1].t);
            if (ib < last_b)
                next = std::min(next, pb[ib + 1].t);
            const Vec2 qa = pa[ia].q + (cur - pa[ia].t) * pa[ia].v;
            const Vec2 qb = pb[ib].q + (cur - pb[ib].t) * pb[ib].v;
            acc += segment_integral(qb - qa, pb[ib].v - pa[ia].v, next - cur);
            cur = next;
        }
        out.push_back(acc);
    }
    return out;
}

double integrate_sq_separation(const Trajectory &a, const Trajectory &b, double t)
{
    if (!(t >= 0.0))
        throw RangeError("integration time must be non-negative");
    const double grid[] = {t};
    return cumulative_sq_separation(a, b, grid).front();
}

double decoherence_rate_scale(const BathParams &bath, const PhysicalConstants &c)
{
    return 2.0 * bath.kappa(c) / (c.hbar * c.hbar);
}

double decoherence_factor(double sq_separation_integral, const BathParams &bath, const PhysicalConstants &c)
{
    if (!(sq_separation_integral >= 0.0))
        throw RangeError("separation integral must be non-negative");
    const double exponent = decoherence_rate_scale(bath, c) * sq_separation_integral;
    if (exponent > 745.0)
        return 0.0;
    return std::exp(-exponent);
}

SampledPair sample_pair(const BilliardDomain &domain, const GaussianPacket &packet, const PhysicalConstants &c,
                        double t_max, std::uint64_t seed, std::uint64_t index)
{
    auto rng = stream_engine(seed, kStreamPurity, index);
    std::size_t rejected = 0, resamples = 0, draws = 0;
    for (;;) {
        const auto before = rejected;
        const auto pa = sample_phase_point_in(domain, packet, c, rng, rejected);
        const auto pb = sample_phase_point_in(domain, packet, c, rng, rejected);
        draws += 2 + (rejected - before);
        try {
            auto ta = propagate(domain, pa.r, pa.p, c.mass, t_max);
            auto tb = propagate(domain, pb.r, pb.p, c.mass, t_max);
            return {std::move(ta), std::move(tb), draws, rejected, resamples};
        }
        catch (const TangencyError &) {
            ++resamples;
        }
    }
}

namespace {

constexpr std::size_t kPairsPerBlock = 256;

struct BlockResult {
    std::vector<double> sum;
    std::vector<Accumulator> spread;
    std::size_t draws = 0;
    std::size_t rejected = 0;
    std::size_t resamples = 0;
};

} // namespace

PuritySeries purity_mc(const BilliardDomain &domain, const GaussianPacket &packet, const BathParams &bath,
                       const PhysicalConstants &c, std::span<const double> times, const MonteCarloOptions &opts)
{
    packet.validate();
    bath.validate();
    c.validate();
    require_time_grid(times);
    if (opts.n_pairs < 100)
        throw RangeError("purity_mc needs at least 100 pairs");

    const std::size_t n_t = times.size();
    const double t_max = times.back();
    const std::size_t n_blocks = (opts.n_pairs + kPairsPerBlock - 1) / kPairsPerBlock;
    std::vector<BlockResult> blocks(n_blocks);

    parallel_for(n_blocks, opts.workers, [&](std::size_t blk) {
        BlockResult &r = blocks[blk];
        r.sum.assign(n_t, 0.0);
        r.spread.assign(n_t, Accumulator{});
        const std::size_t lo = blk * kPairsPerBlock;
        const std::size_t hi = std::min(opts.n_pairs, lo + kPairsPerBlock);
        std::vector<double> integrals(n_t, 0.0);
        for (std::size_t i = lo; i < hi; ++i) {
            if (t_max > 0.0) {
                const auto pair = sample_pair(domain, packet, c, t_max, opts.seed, i);
                integrals = cumulative_sq_separation(pair.a, pair.b, times);
                r.draws += pair.draws;
                r.rejected += pair.rejected_draws;
                r.resamples += pair.tangency_resamples;
            }
            for (std::size_t k = 0; k < n_t; ++k) {
                const double f = decoherence_factor(integrals[k], bath, c);
                r.sum[k] += f;
                r.spread[k].add(f);
            }
        }
    });

    PuritySeries s;
    s.provenance = Provenance::monte_carlo;
    s.n_pairs = opts.n_pairs;
    s.t.assign(times.begin(), times.end());
    s.tau.resize(n_t);
    s.purity.assign(n_t, 0.0);
    s.std_error.resize(n_t);
    std::vector<Accumulator> spread(n_t);
    for (const auto &r : blocks) {
        for (std::size_t k = 0; k < n_t; ++k) {
            s.purity[k] += r.sum[k];
            spread[k].merge(r.spread[k]);
        }
        s.draws += r.draws;
        s.rejected_draws += r.rejected;
        s.tangency_resamples += r.resamples;
    }
    const double n = static_cast<double>(opts.n_pairs);
    for (std::size_t k = 0; k < n_t; ++k) {
        s.tau[k] = bath.gamma * times[k];
        s.purity[k] /= n;
        s.std_error[k] = spread[k].std_error();
        if (s.purity[k] < 1e-300) {
            s.purity[k] = 0.0;
            s.underflow = true;
        }
    }
    return s;
}

namespace {

// Second moments of the model separation over [0, t] for one Cartesian
// component, as a quadratic form in (dr, dp).
struct Moments {
    double rr;
    double rp;
    double pp;
};

Moments free_flight_moments(double t, double mass)
{
    return {t, t * t / (2.0 * mass), t * t * t / (3.0 * mass * mass)};
}

Moments lyapunov_moments(double t, double mass, double lambda)
{
    const double x = 2.0 * lambda * t;
    const double sinh_x = std::sinh(x);
    // sinh x - x and cosh x - 1 without cancellation.
    const double sinh_minus_x =
        x < 1e-2 ? x * x * x / 6.0 * (1.0 + x * x / 20.0 * (1.0 + x * x / 42.0)) : sinh_x - x;
    const double sh = std::sinh(0.5 * x);
    const double cosh_minus_1 = 2.0 * sh * sh;
    const double ml = mass * lambda;
    const double scale = 1.0 / (4.0 * lambda);
    return {scale * (x + sinh_x), scale * cosh_minus_1 / ml, scale * sinh_minus_x / (ml * ml)};
}

// E[exp(-w G w)] for a standard normal 1D variable along one principal axis.
double axis_average(double g)
{
    if (g == 0.0)
        return 1.0;
    // Integrate in w = s u with s the width of the integrand so the
    // quadrature sees an order-one Gaussian for any g.
    const double s = 1.0 / std::sqrt(1.0 + 2.0 * g);
    auto f = [g, s](double u) {
        const double w = s * u;
        return std::exp(-(0.5 + g) * w * w);
    };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
    return 2.0 * s * integral / std::sqrt(2.0 * std::numbers::pi);
}

double component_average(const Moments &m, double k, double var_r, double var_p, GaussianAverage method)
{
    // Whitened quadratic form G = k S M S with S = diag(sqrt(var_r), sqrt(var_p)).
    const double g11 = k * m.rr * var_r;
    const double g12 = k * m.rp * std::sqrt(var_r * var_p);
    const double g22 = k * m.pp * var_p;
    const double det = std::max(g11 * g22 - g12 * g12, 0.0);
    if (method == GaussianAverage::determinant)
        return 1.0 / std::sqrt(1.0 + 2.0 * (g11 + g22) + 4.0 * det);

    const double half_trace = 0.5 * (g11 + g22);
    const double big = half_trace + std::hypot(0.5 * (g11 - g22), g12);
    const double small = big > 0.0 ? det / big : 0.0;
    return axis_average(big) * axis_average(small);
}

} // namespace

PuritySeries purity_quadrature(const SeparationModel &model, const GaussianPacket &packet, const BathParams &bath,
                               const PhysicalConstants &c, std::span<const double> times, GaussianAverage method)
{
    packet.validate();
    bath.validate();
    c.validate();
    require_time_grid(times);

    const double k = decoherence_rate_scale(bath, c);
    // Difference of two independent draws: position variance sigma^2,
    // momentum variance hbar^2 / sigma^2 per component.
    const double var_r = packet.sigma * packet.sigma;
    const double var_p = c.hbar * c.hbar / var_r;

    PuritySeries s;
    s.t.assign(times.begin(), times.end());
    s.tau.resize(times.size());
    s.purity.resize(times.size());
    s.std_error.assign(times.size(), 0.0);

    if (const auto *lm = std::get_if<LyapunovSeparation>(&model)) {
        if (!(lm->lambda > 0.0))
            throw DomainError("the exponential separation model needs lambda > 0");
    }

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        s.tau[i] = bath.gamma * t;
        double p = 1.0;
        std::visit(
            [&](const auto &m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, FreeFlightSeparation>) {
                    s.provenance = Provenance::quadrature_free_flight;
                    const double comp = component_average(free_flight_moments(t, c.mass), k, var_r, var_p, method);
                    p = comp * comp;
                }
                else if constexpr (std::is_same_v<T, LyapunovSeparation>) {
                    s.provenance = Provenance::quadrature_lyapunov;
                    const double comp =
                        component_average(lyapunov_moments(t, c.mass, m.lambda), k, var_r, var_p, method);
                    p = comp * comp;
                }
                else {
                    s.provenance = Provenance::quadrature_ergodic;
                    p = t <= m.t_o ? 1.0 : std::exp(-k * m.mean_sq_separation * (t - m.t_o));
                }
            },
            model);
        if (p < 1e-300) {
            p = 0.0;
            s.underflow = true;
        }
        s.purity[i] = p;
    }
    return s;
}

} // namespace bdec
