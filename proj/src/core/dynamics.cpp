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

#include "dynamics.hpp"

#include "errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bdec {

Trajectory::Trajectory(std::vector<Breakpoint> points, double horizon)
    : points_(std::move(points)), horizon_(horizon)
{
    if (points_.size() < 2)
        throw RangeError("a trajectory needs a launch and a final breakpoint");
}

std::size_t Trajectory::segment_index(double t) const
{
    if (!(t >= 0.0 && t <= horizon_))
        throw RangeError("time " + std::to_string(t) + " outside [0, " + std::to_string(horizon_) + "]");
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double value, const Breakpoint &b) { return value < b.t; });
    auto k = static_cast<std::size_t>(std::distance(points_.begin(), it));
    return std::min(k == 0 ? 0 : k - 1, points_.size() - 2);
}

Vec2 Trajectory::position_at(double t) const
{
    const auto &b = points_[segment_index(t)];
    return b.q + (t - b.t) * b.v;
}

Vec2 Trajectory::velocity_at(double t) const { return points_[segment_index(t)].v; }

namespace {

template <class OnCollision>
std::size_t advance_impl(const BilliardDomain &domain, PhaseState &state, double dt, double t0,
                         OnCollision &&on_collision)
{
    const double speed = norm(state.v);
    std::size_t hits = 0;
    double remaining = dt;
    while (remaining > 0.0) {
        const auto ev = domain.next_collision({state.q, state.v / speed, speed});
        if (ev.time >= remaining) {
            state.q += remaining * state.v;
            break;
        }
        state.q = ev.point;
        state.v = reflect(state.v, ev.normal);
        remaining -= ev.time;
        ++hits;
        on_collision(t0 + (dt - remaining), state);
    }
    return hits;
}

} // namespace

std::size_t advance(const BilliardDomain &domain, PhaseState &state, double dt)
{
    return advance_impl(domain, state, dt, 0.0, [](double, const PhaseState &) {});
}

Trajectory propagate(const BilliardDomain &domain, Vec2 q0, Vec2 p0, double mass, double t_max)
{
    if (!(mass > 0.0))
        throw DomainError("mass must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw RangeError("t_max must be positive");
    if (!(norm(p0) > 0.0))
        throw DomainError("initial momentum must be non-zero");
    if (!domain.contains(q0))
        throw GeometryError("launch point lies outside the " + std::string(domain.name()));

    PhaseState state{q0, p0 / mass};
    std::vector<Breakpoint> points{{0.0, state.q, state.v}};
    advance_impl(domain, state, t_max, 0.0,
                 [&](double t, const PhaseState &s) { points.push_back({t, s.q, s.v}); });
    points.push_back({t_max, state.q, state.v});
    return Trajectory(std::move(points), t_max);
}

double LyapunovEstimate::drift() const { return std::abs(lambda - half_horizon_lambda); }

double LyapunovEstimate::uncertainty() const { return std::hypot(std_error, drift()); }

namespace {

struct MemberResult {
    double lambda;
    double half_lambda;
    double horizon;
    std::size_t resampled;
};

Vec2 random_direction(Engine &rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double a = angle(rng);
    return {std::cos(a), std::sin(a)};
}

// Velocity mismatch above which the pair is taken to straddle a collision.
constexpr double kDesyncTol = 1e-3;

MemberResult benettin_member(const BilliardDomain &domain, const LyapunovOptions &o, double interval, double d0,
                             std::size_t index)
{
    auto rng = stream_engine(o.seed, kStreamLyapunov, index);
    std::normal_distribution<double> gauss;
    const double ell = domain.mean_free_path();
    const double speed = o.speed;
    const auto n_intervals = static_cast<std::size_t>(std::ceil(o.t_max / interval - 1e-9));
    const std::size_t half = (n_intervals + 1) / 2;

    std::size_t resampled = 0;
    for (;;) {
        try {
            PhaseState a{sample_uniform_point(domain, rng), speed * random_direction(rng)};

            Vec2 dq{gauss(rng), gauss(rng)};
            Vec2 dw{gauss(rng), gauss(rng)};
            const Vec2 vhat = a.v / speed;
            dw -= dot(dw, vhat) * vhat;
            const double scale = d0 / std::sqrt(norm2(dq) + norm2(dw));
            dq *= scale;
            dw *= scale;
            PhaseState b{a.q + dq, speed * normalized(a.v + dw * (speed / ell))};
            if (!domain.contains(b.q)) {
                ++resampled;
                continue;
            }

            double t = 0.0;
            double sum_log = 0.0;
            double half_sum = 0.0, half_t = 0.0;
            for (std::size_t k = 1; k <= n_intervals; ++k) {
                advance(domain, a, interval);
                advance(domain, b, interval);
                t += interval;

                Vec2 delta_q = b.q - a.q;
                Vec2 delta_v = b.v - a.v;
                // One member of the pair has hit a wall that the other has
                // not reached yet. Step both past the collision.
                for (int tries = 0; norm(delta_v) > kDesyncTol * speed; ++tries) {
                    if (tries > 1000)
                        throw TangencyError("pair failed to resynchronize");
                    const double nudge = 1e-6 * interval;
                    advance(domain, a, nudge);
                    advance(domain, b, nudge);
                    t += nudge;
                    delta_q = b.q - a.q;
                    delta_v = b.v - a.v;
                }

                const double d = std::sqrt(norm2(delta_q) + norm2(delta_v * (ell / speed)));
                sum_log += std::log(d / d0);
                const double shrink = d0 / d;
                b.q = a.q + shrink * delta_q;
                b.v = speed * normalized(a.v + shrink * delta_v);
                if (!domain.contains(b.q)) {
                    // The fiducial point sits within d0 of a wall; keep the
                    // deviation direction but place it on the inner side.
                    b.q = a.q - shrink * delta_q;
                    if (!domain.contains(b.q))
                        throw TangencyError("renormalized partner left the table");
                }
                if (k == half) {
                    half_sum = sum_log;
                    half_t = t;
                }
            }
            return {sum_log / t, half_sum / half_t, t, resampled};
        }
        catch (const TangencyError &) {
            ++resampled;
        }
    }
}

} // namespace

LyapunovEstimate lyapunov_benettin(const BilliardDomain &domain, const LyapunovOptions &opts)
{
    if (!(opts.speed > 0.0))
        throw DomainError("speed must be positive");
    if (!(opts.t_max > 0.0) || !std::isfinite(opts.t_max))
        throw RangeError("t_max must be positive");
    if (opts.ensemble < 2)
        throw RangeError("ensemble must contain at least two members");

    const double interval = opts.renorm_interval > 0.0 ? opts.renorm_interval
                                                       : domain.mean_free_path() / opts.speed;
    const double d0 = opts.d0 > 0.0 ? opts.d0 : 1e-8 * domain.diameter();
    if (!(opts.t_max >= 2.0 * interval))
        throw RangeError("t_max must span at least two renormalization intervals");

    std::vector<MemberResult> members(opts.ensemble);
    parallel_for(opts.ensemble, opts.workers,
                 [&](std::size_t i) { members[i] = benettin_member(domain, opts, interval, d0, i); });

    Accumulator full, half;
    LyapunovEstimate est;
    for (const auto &m : members) {
        full.add(m.lambda);
        half.add(m.half_lambda);
        est.horizon += m.horizon;
        est.resampled += m.resampled;
    }
    est.lambda = full.mean;
    est.std_error = full.std_error();
    est.half_horizon_lambda = half.mean;
    est.ensemble_size = members.size();
    est.horizon /= static_cast<double>(members.size());
    est.converged = est.drift() <= 0.05 * std::abs(est.lambda);
    return est;
}

MeanFreeTime mean_free_time(const BilliardDomain &domain, double speed, std::size_t ensemble, double t_max,
                            std::uint64_t seed, unsigned workers)
{
    if (!(speed > 0.0))
        throw DomainError("speed must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw RangeError("t_max must be positive");
    if (ensemble < 2)
        throw RangeError("ensemble must contain at least two members");

    std::vector<double> values(ensemble);
    parallel_for(ensemble, workers, [&](std::size_t i) {
        auto rng = stream_engine(seed, kStreamMeanFreeTime, i);
        for (;;) {
            try {
                PhaseState s{sample_uniform_point(domain, rng), speed * random_direction(rng)};
                double first = -1.0, last = -1.0;
                std::size_t hits = 0;
                advance_impl(domain, s, t_max, 0.0, [&](double t, const PhaseState &) {
                    if (hits == 0)
                        first = t;
                    last = t;
                    ++hits;
                });
                if (hits < 2)
                    throw RangeError("t_max too short: fewer than two collisions along a trajectory");
                values[i] = (last - first) / static_cast<double>(hits - 1);
                return;
            }
            catch (const TangencyError &) {
            }
        }
    });

    Accumulator acc;
    for (double v : values)
        acc.add(v);
    return {acc.mean, acc.std_error(), ensemble};
}

} // namespace bdec
