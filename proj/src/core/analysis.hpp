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

#include "decoherence.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bdec {

/// Closed interval of tau values.
struct FitWindow {
    double lo;
    double hi;
};

/// Least-squares line through y = ln(1/P - 1) against tau.
struct RateFit {
    double rate = 0.0;      // slope, in 1/tau units
    double intercept = 0.0; // ln beta
    FitWindow window{};
    double residual_rms = 0.0;
    std::size_t n_points = 0;
    /// Slopes over the first and second half of the selected points; NaN
    /// when fewer than ten points were selected.
    double rate_early = 0.0;
    double rate_late = 0.0;

    /// |rate_early - rate_late| / |rate|, NaN when the halves are missing.
    double instability() const;
};

/// Relative half-window disagreement above which a decay is not a single
/// exponential regime.
inline constexpr double kMaxWindowInstability = 0.2;

/// Fits the decoherence rate of `series`. Without a window, points with
/// 1e-3 <= 1/P - 1 <= 1e3 are used; Monte Carlo points additionally need a
/// relative error below 10% and must lie more than five standard errors
/// above the 1/n_pairs resolution floor. Throws FitError when fewer than
/// five points qualify.
RateFit fit_decoherence_rate(const PuritySeries &series, std::optional<FitWindow> window = std::nullopt);

struct SweepSettings {
    /// Physical time grid shared by all rows.
    std::vector<double> times;
    MonteCarloOptions mc;
    LyapunovOptions lyapunov;
    /// Fit window in physical time; converted to tau per row.
    std::optional<FitWindow> time_window;
};

struct SweepRow {
    double gamma = 0.0;
    double temperature = 0.0;
    double kappa = 0.0;
    double rate_tau = 0.0;
    double rate_t = 0.0;
    double lambda = 0.0;
    /// rate_t / (2 lambda).
    double ratio = 0.0;
    bool ok = false;
    /// "ok", "unstable-window" (rate reported, halves disagree by more than
    /// kMaxWindowInstability) or "fit-error: ...".
    std::string status;
    RateFit fit;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    LyapunovEstimate lyapunov;
    /// max/min of rate_t over successful rows; NaN with fewer than two.
    double spread = 0.0;
    std::size_t succeeded() const;
};

/// One Monte Carlo purity run and rate fit per (gamma, T) setting. The
/// lists are zipped; a list of length one is broadcast. All rows share the
/// same trajectory sample, so rows differ only through kappa. A FitError
/// is recorded in the row's status and the sweep continues.
SweepResult bath_sweep(const BilliardDomain &domain, const GaussianPacket &packet, const PhysicalConstants &c,
                       const std::vector<double> &gammas, const std::vector<double> &temperatures,
                       const SweepSettings &settings);

struct AnalyticAverage {};
struct MonteCarloAverage {
    std::size_t n_pairs = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};
using ErgodicMethod = std::variant<AnalyticAverage, MonteCarloAverage>;

struct ErgodicAverage {
    double value = 0.0;
    double std_error = 0.0; // 0 for the analytic value
};

/// Mean squared distance between two independent uniform points of the
/// table, 2 (polar moment about the centroid) / area when analytic.
ErgodicAverage ergodic_average(const BilliardDomain &domain, const ErgodicMethod &method);

} // namespace bdec
