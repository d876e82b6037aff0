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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bdec {

struct Breakpoint {
    double t;
    Vec2 q;
    Vec2 v; // velocity on [t, t_next)
};

/// Piecewise-linear billiard path. Breakpoint 0 is the launch point, the
/// interior breakpoints are wall collisions (outgoing velocity stored), and
/// the last one is the truncation at the horizon.
class Trajectory {
public:
    Trajectory(std::vector<Breakpoint> points, double horizon);

    const std::vector<Breakpoint> &breakpoints() const { return points_; }
    double horizon() const { return horizon_; }
    std::size_t collisions() const { return points_.size() - 2; }

    /// Index k of the segment [t_k, t_{k+1}] containing t.
    std::size_t segment_index(double t) const;

    /// Throws RangeError outside [0, horizon].
    Vec2 position_at(double t) const;
    Vec2 velocity_at(double t) const;

private:
    std::vector<Breakpoint> points_;
    double horizon_;
};

struct PhaseState {
    Vec2 q;
    Vec2 v;
};

/// Moves `state` forward by `dt` with specular reflections. Returns the
/// number of wall collisions. Propagates TangencyError.
std::size_t advance(const BilliardDomain &domain, PhaseState &state, double dt);

/// Event-driven path from (q0, p0/mass) up to t_max.
Trajectory propagate(const BilliardDomain &domain, Vec2 q0, Vec2 p0, double mass, double t_max);

inline Vec2 position_at(const Trajectory &traj, double t) { return traj.position_at(t); }

struct LyapunovOptions {
    double speed = 1.0;
    double t_max = 0.0;
    /// 0 selects one mean free time, pi A / (P speed).
    double renorm_interval = 0.0;
    /// 0 selects 1e-8 diameter.
    double d0 = 0.0;
    std::size_t ensemble = 32;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct LyapunovEstimate {
    double lambda = 0.0;
    /// Standard error of the ensemble mean.
    double std_error = 0.0;
    /// Ensemble mean of the estimate over the first half of the horizon.
    double half_horizon_lambda = 0.0;
    std::size_t ensemble_size = 0;
    double horizon = 0.0;
    /// Members restarted after a grazing or corner collision.
    std::size_t resampled = 0;
    /// False when the estimate moved by more than 5% over the last horizon
    /// doubling.
    bool converged = false;

    /// Finite-horizon drift |lambda - half_horizon_lambda|.
    double drift() const;
    /// std_error and drift combined in quadrature.
    double uncertainty() const;
};

/// Two-trajectory Benettin estimate of the largest Lyapunov exponent at a
/// fixed speed. Deviations are measured in the metric
/// |dq|^2 + (l |dv| / speed)^2 with l the mean free path, and renormalized
/// to d0 every renorm_interval.
LyapunovEstimate lyapunov_benettin(const BilliardDomain &domain, const LyapunovOptions &opts);

struct MeanFreeTime {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t ensemble_size = 0;
};

/// Mean time between successive collisions, averaged along trajectories of
/// length t_max launched uniformly in phase space.
MeanFreeTime mean_free_time(const BilliardDomain &domain, double speed, std::size_t ensemble, double t_max,
                            std::uint64_t seed, unsigned workers = 1);

} // namespace bdec
