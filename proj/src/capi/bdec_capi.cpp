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

#include "bdec/bdec.h"

#include "analysis.hpp"
#include "decoherence.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "initial_state.hpp"
#include "models.hpp"

#include <cmath>
#include <new>
#include <string>
#include <utility>

struct bdec_domain {
    bdec::BilliardDomain impl;
};

struct bdec_series {
    bdec::PuritySeries impl;
    std::string provenance;
};

struct bdec_sweep {
    bdec::SweepResult impl;
};

namespace {

thread_local std::string g_last_error;

bdec_status fail(bdec_status s, std::string message)
{
    g_last_error = std::move(message);
    return s;
}

// Runs `fn` and maps exceptions onto status codes.
template <class Fn>
bdec_status guarded(Fn &&fn)
{
    try {
        g_last_error.clear();
        fn();
        return BDEC_OK;
    }
    catch (const bdec::TangencyError &e) {
        return fail(BDEC_ERR_TANGENCY, e.what());
    }
    catch (const bdec::GeometryError &e) {
        return fail(BDEC_ERR_GEOMETRY, e.what());
    }
    catch (const bdec::ReflectError &e) {
        return fail(BDEC_ERR_REFLECT, e.what());
    }
    catch (const bdec::RangeError &e) {
        return fail(BDEC_ERR_RANGE, e.what());
    }
    catch (const bdec::DomainError &e) {
        return fail(BDEC_ERR_DOMAIN, e.what());
    }
    catch (const bdec::FitError &e) {
        return fail(BDEC_ERR_FIT, e.what());
    }
    catch (const std::bad_alloc &) {
        return fail(BDEC_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e) {
        return fail(BDEC_ERR_INTERNAL, e.what());
    }
    catch (...) {
        return fail(BDEC_ERR_INTERNAL, "unknown error");
    }
}

#define BDEC_REQUIRE(cond)                                                                                   \
    do {                                                                                                     \
        if (!(cond))                                                                                         \
            return fail(BDEC_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);                               \
    } while (0)

bdec::PhysicalConstants to_cpp(const bdec_constants &c) { return {c.hbar, c.mass, c.kB}; }
bdec::BathParams to_cpp(const bdec_bath &b) { return {b.gamma, b.temperature}; }
bdec::GaussianPacket to_cpp(const bdec_packet &p) { return {{p.rx, p.ry}, {p.px, p.py}, p.sigma}; }

bdec::LyapunovOptions to_cpp(const bdec_lyapunov_options &o)
{
    bdec::LyapunovOptions r;
    r.speed = o.speed;
    r.t_max = o.t_max;
    r.renorm_interval = o.renorm_interval;
    r.d0 = o.d0;
    r.ensemble = static_cast<std::size_t>(o.ensemble);
    r.seed = o.seed;
    r.workers = o.workers;
    return r;
}

bdec::MonteCarloOptions to_cpp(const bdec_mc_options &o)
{
    return {static_cast<std::size_t>(o.n_pairs), o.seed, o.workers};
}

void to_c(const bdec::LyapunovEstimate &e, bdec_lyapunov_result *out)
{
    out->lambda = e.lambda;
    out->std_error = e.std_error;
    out->half_horizon_lambda = e.half_horizon_lambda;
    out->uncertainty = e.uncertainty();
    out->ensemble_size = e.ensemble_size;
    out->horizon = e.horizon;
    out->resampled = e.resampled;
    out->converged = e.converged ? 1 : 0;
}

bdec_status create_domain(bdec::DomainShape shape, bdec_domain **out)
{
    BDEC_REQUIRE(out != nullptr);
    return guarded([&] { *out = new bdec_domain{bdec::BilliardDomain(shape)}; });
}

bdec_status scalar(double *out, double (*fn)(double, double, double), double a, double b, double c)
{
    BDEC_REQUIRE(out != nullptr);
    return guarded([&] { *out = fn(a, b, c); });
}

} // namespace

extern "C" {

const char *bdec_status_string(bdec_status status)
{
    switch (status) {
    case BDEC_OK:
        return "ok";
    case BDEC_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case BDEC_ERR_GEOMETRY:
        return "geometry error";
    case BDEC_ERR_TANGENCY:
        return "tangency error";
    case BDEC_ERR_REFLECT:
        return "reflect error";
    case BDEC_ERR_RANGE:
        return "range error";
    case BDEC_ERR_DOMAIN:
        return "domain error";
    case BDEC_ERR_FIT:
        return "fit error";
    case BDEC_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *bdec_last_error(void) { return g_last_error.c_str(); }

const char *bdec_version(void) { return "0.1.0"; }

bdec_status bdec_domain_create_rectangle(double lx, double ly, bdec_domain **out)
{
    return create_domain(bdec::Rectangle{lx, ly}, out);
}

bdec_status bdec_domain_create_disk(double radius, bdec_domain **out)
{
    return create_domain(bdec::Disk{radius}, out);
}

bdec_status bdec_domain_create_stadium(double half_length, double radius, bdec_domain **out)
{
    return create_domain(bdec::Stadium{half_length, radius}, out);
}

bdec_status bdec_domain_create_sinai(double side, double radius, bdec_domain **out)
{
    return create_domain(bdec::Sinai{side, radius}, out);
}

void bdec_domain_destroy(bdec_domain *domain) { delete domain; }

bdec_status bdec_domain_area(const bdec_domain *domain, double *out)
{
    BDEC_REQUIRE(domain && out);
    *out = domain->impl.area();
    return BDEC_OK;
}

bdec_status bdec_domain_perimeter(const bdec_domain *domain, double *out)
{
    BDEC_REQUIRE(domain && out);
    *out = domain->impl.perimeter();
    return BDEC_OK;
}

bdec_status bdec_domain_diameter(const bdec_domain *domain, double *out)
{
    BDEC_REQUIRE(domain && out);
    *out = domain->impl.diameter();
    return BDEC_OK;
}

bdec_status bdec_domain_centroid(const bdec_domain *domain, double *x, double *y)
{
    BDEC_REQUIRE(domain && x && y);
    const auto c = domain->impl.centroid();
    *x = c.x;
    *y = c.y;
    return BDEC_OK;
}

bdec_status bdec_domain_contains(const bdec_domain *domain, double x, double y, int *out)
{
    BDEC_REQUIRE(domain && out);
    *out = domain->impl.contains({x, y}) ? 1 : 0;
    return BDEC_OK;
}

bdec_status bdec_next_collision(const bdec_domain *domain, double ox, double oy, double dx, double dy, double speed,
                                bdec_collision *out)
{
    BDEC_REQUIRE(domain && out);
    return guarded([&] {
        const auto ev = domain->impl.next_collision({{ox, oy}, {dx, dy}, speed});
        *out = {ev.time, ev.point.x, ev.point.y, ev.normal.x, ev.normal.y};
    });
}

bdec_status bdec_derived_params(const bdec_packet *packet, const bdec_bath *bath, const bdec_constants *constants,
                                double lambda, double area, double t_o, bdec_coefficients coefficients,
                                bdec_model_params *out)
{
    BDEC_REQUIRE(packet && bath && constants && out);
    BDEC_REQUIRE(coefficients == BDEC_COEFFICIENTS_PUBLISHED || coefficients == BDEC_COEFFICIENTS_GAUSSIAN_AVERAGE);
    return guarded([&] {
        std::optional<double> lam;
        if (lambda > 0.0)
            lam = lambda;
        const auto m = bdec::derived_params(to_cpp(*packet), to_cpp(*bath), to_cpp(*constants), lam, area, t_o,
                                            coefficients == BDEC_COEFFICIENTS_PUBLISHED
                                                ? bdec::LyapunovCoefficients::published
                                                : bdec::LyapunovCoefficients::gaussian_average);
        *out = {m.a1, m.a2, m.b1, m.b2, m.b3, m.beta, m.Lambda, m.tau_o, m.kT_over_Delta, m.has_lyapunov ? 1 : 0};
    });
}

bdec_status bdec_wigner_density(const bdec_packet *packet, const bdec_constants *constants, double rx, double ry,
                                double px, double py, double *out)
{
    BDEC_REQUIRE(packet && constants && out);
    return guarded([&] {
        const auto p = to_cpp(*packet);
        const auto c = to_cpp(*constants);
        p.validate();
        c.validate();
        *out = bdec::wigner_density(p, c, {rx, ry}, {px, py});
    });
}

bdec_status bdec_purity_free_flight(double tau, double a1, double a2, double *out)
{
    return scalar(out, &bdec::purity_free_flight, tau, a1, a2);
}

bdec_status bdec_purity_free_flight_gaussian(double tau, double a1, double a2, double *out)
{
    return scalar(out, &bdec::purity_free_flight_gaussian, tau, a1, a2);
}

bdec_status bdec_purity_ergodic(double tau, double tau_o, double kT_over_Delta, double *out)
{
    return scalar(out, &bdec::purity_ergodic, tau, tau_o, kT_over_Delta);
}

bdec_status bdec_purity_lyapunov(double tau, double b1, double b2, double b3, double Lambda, double *out)
{
    BDEC_REQUIRE(out != nullptr);
    return guarded([&] { *out = bdec::purity_lyapunov(tau, b1, b2, b3, Lambda); });
}

bdec_status bdec_purity_lyapunov_asymptotic(double tau, double beta, double Lambda, double *out)
{
    return scalar(out, &bdec::purity_lyapunov_asymptotic, tau, beta, Lambda);
}

void bdec_lyapunov_options_init(bdec_lyapunov_options *opts)
{
    if (!opts)
        return;
    const bdec::LyapunovOptions d;
    *opts = {d.speed, d.t_max, d.renorm_interval, d.d0, d.ensemble, d.seed, d.workers};
}

bdec_status bdec_lyapunov(const bdec_domain *domain, const bdec_lyapunov_options *opts, bdec_lyapunov_result *out)
{
    BDEC_REQUIRE(domain && opts && out);
    return guarded([&] { to_c(bdec::lyapunov_benettin(domain->impl, to_cpp(*opts)), out); });
}

bdec_status bdec_mean_free_time(const bdec_domain *domain, double speed, uint64_t ensemble, double t_max,
                                uint64_t seed, unsigned workers, double *value, double *std_error)
{
    BDEC_REQUIRE(domain && value && std_error);
    return guarded([&] {
        const auto m = bdec::mean_free_time(domain->impl, speed, static_cast<std::size_t>(ensemble), t_max, seed,
                                            workers);
        *value = m.value;
        *std_error = m.std_error;
    });
}

bdec_status bdec_purity_mc(const bdec_domain *domain, const bdec_packet *packet, const bdec_bath *bath,
                           const bdec_constants *constants, const double *times, size_t n_times,
                           const bdec_mc_options *opts, bdec_series **out)
{
    BDEC_REQUIRE(domain && packet && bath && constants && times && opts && out);
    BDEC_REQUIRE(n_times > 0);
    return guarded([&] {
        auto s = bdec::purity_mc(domain->impl, to_cpp(*packet), to_cpp(*bath), to_cpp(*constants),
                                 std::span<const double>(times, n_times), to_cpp(*opts));
        const std::string prov(bdec::to_string(s.provenance));
        *out = new bdec_series{std::move(s), prov};
    });
}

bdec_status bdec_purity_quadrature(bdec_separation_model model, double model_param, double t_o,
                                   const bdec_packet *packet, const bdec_bath *bath, const bdec_constants *constants,
                                   const double *times, size_t n_times, bdec_gaussian_average method,
                                   bdec_series **out)
{
    BDEC_REQUIRE(packet && bath && constants && times && out);
    BDEC_REQUIRE(n_times > 0);
    BDEC_REQUIRE(method == BDEC_AVERAGE_NUMERICAL || method == BDEC_AVERAGE_DETERMINANT);
    bdec::SeparationModel m;
    switch (model) {
    case BDEC_SEPARATION_FREE_FLIGHT:
        m = bdec::FreeFlightSeparation{};
        break;
    case BDEC_SEPARATION_LYAPUNOV:
        m = bdec::LyapunovSeparation{model_param};
        break;
    case BDEC_SEPARATION_ERGODIC:
        m = bdec::ErgodicSeparation{model_param, t_o};
        break;
    default:
        return fail(BDEC_ERR_INVALID_ARGUMENT, "unknown separation model");
    }
    return guarded([&] {
        auto s = bdec::purity_quadrature(m, to_cpp(*packet), to_cpp(*bath), to_cpp(*constants),
                                         std::span<const double>(times, n_times),
                                         method == BDEC_AVERAGE_NUMERICAL ? bdec::GaussianAverage::numerical
                                                                          : bdec::GaussianAverage::determinant);
        const std::string prov(bdec::to_string(s.provenance));
        *out = new bdec_series{std::move(s), prov};
    });
}

void bdec_series_destroy(bdec_series *series) { delete series; }

bdec_status bdec_series_info_get(const bdec_series *series, bdec_series_info *out)
{
    BDEC_REQUIRE(series && out);
    const auto &s = series->impl;
    *out = {s.size(),
            s.n_pairs,
            s.draws,
            s.rejected_draws,
            s.tangency_resamples,
            s.underflow ? 1 : 0,
            s.rejection_warning() ? 1 : 0,
            series->provenance.c_str()};
    return BDEC_OK;
}

bdec_status bdec_series_point(const bdec_series *series, size_t index, double *t, double *tau, double *purity,
                              double *std_error)
{
    BDEC_REQUIRE(series != nullptr);
    const auto &s = series->impl;
    if (index >= s.size())
        return fail(BDEC_ERR_RANGE, "series index out of range");
    if (t)
        *t = s.t[index];
    if (tau)
        *tau = s.tau[index];
    if (purity)
        *purity = s.purity[index];
    if (std_error)
        *std_error = s.std_error[index];
    return BDEC_OK;
}

bdec_status bdec_fit_rate(const bdec_series *series, const double *tau_window, bdec_rate_fit *out)
{
    BDEC_REQUIRE(series && out);
    return guarded([&] {
        std::optional<bdec::FitWindow> w;
        if (tau_window)
            w = bdec::FitWindow{tau_window[0], tau_window[1]};
        const auto f = bdec::fit_decoherence_rate(series->impl, w);
        *out = {f.rate,         f.intercept,       f.window.lo,      f.window.hi, f.residual_rms,
                f.n_points,     f.rate_early,      f.rate_late,      f.instability()};
    });
}

bdec_status bdec_bath_sweep(const bdec_domain *domain, const bdec_packet *packet, const bdec_constants *constants,
                            const double *gammas, size_t n_gammas, const double *temperatures, size_t n_temperatures,
                            const double *times, size_t n_times, const bdec_mc_options *mc,
                            const bdec_lyapunov_options *lyapunov, const double *time_window, bdec_sweep **out)
{
    BDEC_REQUIRE(domain && packet && constants && gammas && temperatures && times && mc && lyapunov && out);
    BDEC_REQUIRE(n_gammas > 0 && n_temperatures > 0 && n_times > 0);
    return guarded([&] {
        bdec::SweepSettings settings;
        settings.times.assign(times, times + n_times);
        settings.mc = to_cpp(*mc);
        settings.lyapunov = to_cpp(*lyapunov);
        if (time_window)
            settings.time_window = bdec::FitWindow{time_window[0], time_window[1]};
        auto r = bdec::bath_sweep(domain->impl, to_cpp(*packet), to_cpp(*constants),
                                  std::vector<double>(gammas, gammas + n_gammas),
                                  std::vector<double>(temperatures, temperatures + n_temperatures), settings);
        *out = new bdec_sweep{std::move(r)};
    });
}

void bdec_sweep_destroy(bdec_sweep *sweep) { delete sweep; }

size_t bdec_sweep_size(const bdec_sweep *sweep) { return sweep ? sweep->impl.rows.size() : 0; }

bdec_status bdec_sweep_row_get(const bdec_sweep *sweep, size_t index, bdec_sweep_row *out)
{
    BDEC_REQUIRE(sweep && out);
    if (index >= sweep->impl.rows.size())
        return fail(BDEC_ERR_RANGE, "sweep row index out of range");
    const auto &r = sweep->impl.rows[index];
    *out = {r.gamma,     r.temperature, r.kappa,   r.rate_tau,
            r.rate_t,    r.lambda,      r.ratio,   r.ok ? 1 : 0,
            r.ok ? r.fit.instability() : std::nan(""), r.status.c_str()};
    return BDEC_OK;
}

bdec_status bdec_sweep_lyapunov(const bdec_sweep *sweep, bdec_lyapunov_result *out)
{
    BDEC_REQUIRE(sweep && out);
    to_c(sweep->impl.lyapunov, out);
    return BDEC_OK;
}

bdec_status bdec_sweep_spread(const bdec_sweep *sweep, double *out)
{
    BDEC_REQUIRE(sweep && out);
    *out = sweep->impl.spread;
    return BDEC_OK;
}

bdec_status bdec_ergodic_average_analytic(const bdec_domain *domain, double *out)
{
    BDEC_REQUIRE(domain && out);
    return guarded([&] { *out = bdec::ergodic_average(domain->impl, bdec::AnalyticAverage{}).value; });
}

bdec_status bdec_ergodic_average_mc(const bdec_domain *domain, uint64_t n_pairs, uint64_t seed, unsigned workers,
                                    double *value, double *std_error)
{
    BDEC_REQUIRE(domain && value && std_error);
    return guarded([&] {
        const auto r = bdec::ergodic_average(
            domain->impl, bdec::MonteCarloAverage{static_cast<std::size_t>(n_pairs), seed, workers});
        *value = r.value;
        *std_error = r.std_error;
    });
}

} // extern "C"
