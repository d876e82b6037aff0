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

#include "analysis.hpp"

#include "errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bdec {

double RateFit::instability() const
{
    if (std::isnan(rate_early) || std::isnan(rate_late))
        return std::numeric_limits<double>::quiet_NaN();
    return std::abs(rate_early - rate_late) / std::max(std::abs(rate), std::numeric_limits<double>::min());
}

namespace {

struct Line {
    double slope;
    double intercept;
    double rms;
};

Line least_squares(const std::vector<double> &x, const std::vector<double> &y, std::size_t lo, std::size_t hi)
{
    const double n = static_cast<double>(hi - lo);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw FitError("fit window has no spread in tau");
    Line l{sxy / sxx, 0.0, 0.0};
    l.intercept = my - l.slope * mx;
    double ss = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double r = y[i] - (l.intercept + l.slope * x[i]);
        ss += r * r;
    }
    l.rms = std::sqrt(ss / n);
    return l;
}

constexpr std::size_t kMinFitPoints = 5;

} // namespace

RateFit fit_decoherence_rate(const PuritySeries &series, std::optional<FitWindow> window)
{
    if (window && !(window->lo < window->hi))
        throw FitError("fit window must satisfy lo < hi");

    const bool mc = series.provenance == Provenance::monte_carlo;
    const double floor = mc && series.n_pairs > 0 ? 1.0 / static_cast<double>(series.n_pairs) : 0.0;

    std::vector<double> x, y;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double p = series.purity[i];
        const double tau = series.tau[i];
        if (!(p > 0.0 && p < 1.0))
            continue;
        const double excess = 1.0 / p - 1.0;
        if (window) {
            if (tau < window->lo || tau > window->hi)
                continue;
        }
        else {
            if (excess < 1e-3 || excess > 1e3)
                continue;
            if (mc) {
                const double se = series.std_error[i];
                if (se / p >= 0.1 || p <= floor + 5.0 * se)
                    continue;
            }
        }
        x.push_back(tau);
        y.push_back(std::log(excess));
    }
    if (x.size() < kMinFitPoints)
        throw FitError("only " + std::to_string(x.size()) + " points qualify for the rate fit, need " +
                       std::to_string(kMinFitPoints));

    const Line all = least_squares(x, y, 0, x.size());
    RateFit fit;
    fit.rate = all.slope;
    fit.intercept = all.intercept;
    fit.residual_rms = all.rms;
    fit.n_points = x.size();
    fit.window = {x.front(), x.back()};
    if (!(fit.window.lo < fit.window.hi))
        throw FitError("fit window collapsed to a single tau");
    fit.rate_early = fit.rate_late = std::numeric_limits<double>::quiet_NaN();
    if (x.size() >= 2 * kMinFitPoints) {
        const std::size_t mid = x.size() / 2;
        fit.rate_early = least_squares(x, y, 0, mid).slope;
        fit.rate_late = least_squares(x, y, mid, x.size()).slope;
    }
    return fit;
}

std::size_t SweepResult::succeeded() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow &r) { return r.ok; }));
}

SweepResult bath_sweep(const BilliardDomain &domain, const GaussianPacket &packet, const PhysicalConstants &c,
                       const std::vector<double> &gammas, const std::vector<double> &temperatures,
                       const SweepSettings &settings)
{
    if (gammas.empty() || temperatures.empty())
        throw RangeError("sweep needs at least one gamma and one T");
    const std::size_t n = std::max(gammas.size(), temperatures.size());
    if ((gammas.size() != 1 && gammas.size() != n) || (temperatures.size() != 1 && temperatures.size() != n))
        throw RangeError("gamma and T lists must have equal length or length one");

    SweepResult result;
    result.lyapunov = lyapunov_benettin(domain, settings.lyapunov);
    const double lambda = result.lyapunov.lambda;

    for (std::size_t i = 0; i < n; ++i) {
        SweepRow row;
        row.gamma = gammas.size() == 1 ? gammas[0] : gammas[i];
        row.temperature = temperatures.size() == 1 ? temperatures[0] : temperatures[i];
        const BathParams bath{row.gamma, row.temperature};
        row.kappa = bath.kappa(c);
        row.lambda = lambda;
        try {
            const auto series = purity_mc(domain, packet, bath, c, settings.times, settings.mc);
            std::optional<FitWindow> window;
            if (settings.time_window)
                window = FitWindow{settings.time_window->lo * row.gamma, settings.time_window->hi * row.gamma};
            row.fit = fit_decoherence_rate(series, window);
            row.rate_tau = row.fit.rate;
            row.rate_t = row.fit.rate * row.gamma;
            row.ratio = row.rate_t / (2.0 * lambda);
            row.ok = true;
            row.status = row.fit.instability() > kMaxWindowInstability ? "unstable-window" : "ok";
        }
        catch (const FitError &e) {
            row.status = std::string("fit-error: ") + e.what();
        }
        result.rows.push_back(std::move(row));
    }

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &r : result.rows) {
        if (!r.ok)
            continue;
        lo = std::min(lo, r.rate_t);
        hi = std::max(hi, r.rate_t);
    }
    result.spread = result.succeeded() >= 2 ? hi / lo : std::numeric_limits<double>::quiet_NaN();
    return result;
}

namespace {

// Mean squared distance between independent uniform points, from the polar
// moment about the centroid: <|q - q'|^2> = 2 I_c / A.
double analytic_mean_sq_distance(const BilliardDomain &domain)
{
    constexpr double pi = std::numbers::pi;
    return std::visit(
        [&](const auto &s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return (s.lx * s.lx + s.ly * s.ly) / 6.0;
            }
            else if constexpr (std::is_same_v<T, Disk>) {
                return s.radius * s.radius;
            }
            else if constexpr (std::is_same_v<T, Stadium>) {
                const double a = s.half_length, r = s.radius;
                const double box = 4.0 * a * r * (a * a + r * r) / 3.0;
                const double caps = pi * r * r * r * r / 2.0 + 8.0 * a * r * r * r / 3.0 + pi * a * a * r * r;
                return 2.0 * (box + caps) / domain.area();
            }
            else {
                const double l = s.side, r = s.radius;
                const double moment = l * l * l * l / 6.0 - pi * r * r * r * r / 2.0;
                return 2.0 * moment / domain.area();
            }
        },
        domain.shape());
}

} // namespace

ErgodicAverage ergodic_average(const BilliardDomain &domain, const ErgodicMethod &method)
{
    if (std::holds_alternative<AnalyticAverage>(method))
        return {analytic_mean_sq_distance(domain), 0.0};

    const auto &m = std::get<MonteCarloAverage>(method);
    if (m.n_pairs < 2)
        throw RangeError("ergodic average needs at least two pairs");
    constexpr std::size_t block = 1u << 14;
    const std::size_t n_blocks = (m.n_pairs + block - 1) / block;
    std::vector<Accumulator> acc(n_blocks);
    parallel_for(n_blocks, m.workers, [&](std::size_t b) {
        auto rng = stream_engine(m.seed, kStreamErgodic, b);
        const std::size_t count = std::min(block, m.n_pairs - b * block);
        for (std::size_t i = 0; i < count; ++i) {
            const Vec2 p = sample_uniform_point(domain, rng);
            const Vec2 q = sample_uniform_point(domain, rng);
            acc[b].add(norm2(p - q));
        }
    });
    Accumulator total;
    for (const auto &a : acc)
        total.merge(a);
    return {total.mean, total.std_error()};
}

} // namespace bdec
