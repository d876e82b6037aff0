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

#include "commands.hpp"

#include "capi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace bdec::cli {

std::string format17(double v)
{
    if (std::isnan(v))
        return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void line(const std::string &s) { text_ += s + '\n'; }

    void value(const std::string &key, const std::string &v, const std::string &label = {})
    {
        kv_.emplace_back(key, v);
        line((label.empty() ? key : label) + ": " + v);
    }
    void value(const std::string &key, double v, const std::string &label = {})
    {
        value(key, v == v ? format17(v) : std::string("nan"), label);
    }

    /// Adds to the one-line summary only.
    void summary_only(const std::string &key, const std::string &v) { kv_.emplace_back(key, v); }

    std::string human(const RunConfig &cfg) const
    {
        return "# bdec " + std::string(bdec_version()) + " " + command_ + "\n" + echo(cfg, "# ") + text_;
    }

    std::string summary_line() const
    {
        std::string s = "command=" + command_;
        for (const auto &[k, v] : kv_)
            s += " " + k + "=" + v;
        return s + "\n";
    }

private:
    std::string command_;
    std::string text_;
    std::vector<std::pair<std::string, std::string>> kv_;
};

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ApiError(BDEC_ERR_INTERNAL, "cannot open output file " + path);
    f << content;
    if (!f.flush())
        throw ApiError(BDEC_ERR_INTERNAL, "cannot write output file " + path);
}

/// Reports without a CSV go to stdout; --out receives the full human report.
void emit_report(const Report &r, const RunConfig &cfg, const OutputOptions &out)
{
    if (out.out_path)
        write_file(*out.out_path, r.human(cfg));
    std::cout << (out.summary ? r.summary_line() : r.human(cfg)) << std::flush;
}

/// The CSV goes to --out or stdout; the report then goes to stdout or stderr.
void emit_csv(const std::string &csv, const Report &r, const RunConfig &cfg, const OutputOptions &out)
{
    std::ostream &report_stream = out.out_path ? std::cout : std::cerr;
    if (out.out_path)
        write_file(*out.out_path, csv);
    else
        std::cout << csv << std::flush;
    report_stream << (out.summary ? r.summary_line() : r.human(cfg)) << std::flush;
}

struct Context {
    const RunConfig &cfg;
    DomainPtr domain;
    bdec_constants constants{};
    bdec_bath bath{};
    bdec_packet packet{};
    double speed = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    std::optional<bdec_lyapunov_result> benettin;
    std::optional<double> lambda_value;
    std::optional<double> t_o_value;

    explicit Context(const RunConfig &c) : cfg(c)
    {
        bdec_domain *d = nullptr;
        bdec_status s = BDEC_OK;
        if (cfg.variant == "rectangle")
            s = bdec_domain_create_rectangle(*cfg.rectangle_lx, *cfg.rectangle_ly, &d);
        else if (cfg.variant == "disk")
            s = bdec_domain_create_disk(*cfg.disk_r, &d);
        else if (cfg.variant == "stadium")
            s = bdec_domain_create_stadium(cfg.stadium_a, cfg.stadium_r, &d);
        else
            s = bdec_domain_create_sinai(*cfg.sinai_l, *cfg.sinai_r, &d);
        if (s != BDEC_OK)
            throw ConfigError("domain.variant", bdec_last_error());
        domain.reset(d);
        check(bdec_domain_area(d, &area), "area");
        check(bdec_domain_perimeter(d, &perimeter), "perimeter");

        double cx = 0.0, cy = 0.0;
        check(bdec_domain_centroid(d, &cx, &cy), "centroid");
        packet = {cfg.rx.value_or(cx), cfg.ry.value_or(cy), cfg.px, cfg.py, cfg.sigma};
        int inside = 0;
        check(bdec_domain_contains(d, packet.rx, packet.ry, &inside), "contains");
        if (!inside)
            throw ConfigError(cfg.rx ? "packet.rx" : "packet.ry", "packet centre lies outside the table");

        constants = {cfg.hbar, cfg.mass, cfg.kB};
        bath = {cfg.gamma, cfg.temperature};
        speed = std::hypot(cfg.px, cfg.py) / cfg.mass;
    }

    double mean_free_path() const { return std::numbers::pi * area / perimeter; }

    bdec_lyapunov_options lyapunov_options() const
    {
        bdec_lyapunov_options o;
        bdec_lyapunov_options_init(&o);
        o.speed = speed;
        o.t_max = cfg.lyapunov_t_max.value_or(1000.0 * mean_free_path() / speed);
        o.renorm_interval = cfg.lyapunov_renorm_interval;
        o.d0 = cfg.lyapunov_d0;
        o.ensemble = cfg.lyapunov_ensemble;
        o.seed = cfg.seed;
        o.workers = cfg.workers;
        return o;
    }

    const bdec_lyapunov_result &run_benettin()
    {
        if (!benettin) {
            const auto o = lyapunov_options();
            bdec_lyapunov_result r{};
            check(bdec_lyapunov(domain.get(), &o, &r), "Lyapunov estimate");
            benettin = r;
        }
        return *benettin;
    }

    double lambda()
    {
        if (!lambda_value)
            lambda_value = cfg.lambda ? *cfg.lambda : run_benettin().lambda;
        return *lambda_value;
    }

    double t_o()
    {
        if (!t_o_value) {
            if (cfg.t_o) {
                t_o_value = *cfg.t_o;
            }
            else {
                double v = 0.0, se = 0.0;
                const double horizon = cfg.mft_t_max.value_or(200.0 * mean_free_path() / speed);
                check(bdec_mean_free_time(domain.get(), speed, cfg.mft_ensemble, horizon, cfg.seed, cfg.workers, &v,
                                          &se),
                      "mean free time");
                t_o_value = v;
            }
        }
        return *t_o_value;
    }

    double kappa() const { return 4.0 * cfg.mass * cfg.gamma * cfg.kB * cfg.temperature; }

    /// min(0.5/gamma, 15/lambda) unless time.t_max is set.
    double t_max(double gamma)
    {
        if (cfg.t_max)
            return *cfg.t_max;
        const double lam = lambda();
        double t = lam > 0.0 ? 15.0 / lam : std::numeric_limits<double>::infinity();
        if (gamma > 0.0)
            t = std::min(t, 0.5 / gamma);
        if (!std::isfinite(t))
            throw ConfigError("time.t_max", "cannot be derived with gamma = 0 and lambda <= 0; set it explicitly");
        return t;
    }

    std::vector<double> times(double t_max) const
    {
        const std::size_t n = cfg.n_points;
        std::vector<double> t(n);
        if (cfg.spacing == "linear") {
            for (std::size_t i = 0; i < n; ++i)
                t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        else {
            t[0] = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                const double frac = n == 2 ? 1.0 : static_cast<double>(i - 1) / static_cast<double>(n - 2);
                t[i] = t_max * std::pow(10.0, -cfg.log_decades * (1.0 - frac));
            }
            t[n - 1] = t_max;
        }
        return t;
    }
};

bdec_mc_options mc_options(const RunConfig &cfg) { return {cfg.n_pairs, cfg.seed, cfg.workers}; }

bdec_coefficients coefficients(const std::string &name)
{
    return name == "published" ? BDEC_COEFFICIENTS_PUBLISHED : BDEC_COEFFICIENTS_GAUSSIAN_AVERAGE;
}

std::string csv_preamble(const std::string &command, const RunConfig &cfg)
{
    return "# bdec " + std::string(bdec_version()) + " " + command + "\n" + echo(cfg, "# ", false);
}

} // namespace

int cmd_lyapunov(const RunConfig &cfg, const OutputOptions &out)
{
    Context ctx(cfg);
    const auto &r = ctx.run_benettin();
    Report rep("lyapunov");
    rep.value("lambda", r.lambda);
    rep.value("std_error", r.std_error);
    rep.value("ensemble", std::to_string(r.ensemble_size));
    rep.value("horizon", r.horizon);
    rep.value("half_horizon_lambda", r.half_horizon_lambda);
    rep.value("drift", std::abs(r.lambda - r.half_horizon_lambda));
    rep.value("uncertainty", r.uncertainty);
    rep.value("z_score", r.uncertainty > 0.0 ? r.lambda / r.uncertainty : kNaN);
    rep.value("resampled", std::to_string(r.resampled));
    rep.value("converged", r.converged ? "true" : "false");
    int code = kExitOk;
    if (!r.converged) {
        rep.line("warning: estimate moved by more than 5% over the last horizon doubling");
        if (cfg.lyapunov_strict)
            code = kExitConvergence;
    }
    emit_report(rep, cfg, out);
    return code;
}

int cmd_purity(const RunConfig &cfg, const OutputOptions &out)
{
    Context ctx(cfg);
    const double lambda = ctx.lambda();
    const double t_o = ctx.t_o();
    const auto times = ctx.times(ctx.t_max(cfg.gamma));
    const auto mc = mc_options(cfg);

    bdec_series *raw = nullptr;
    check(bdec_purity_mc(ctx.domain.get(), &ctx.packet, &ctx.bath, &ctx.constants, times.data(), times.size(), &mc,
                         &raw),
          "purity Monte Carlo");
    SeriesPtr series(raw);
    bdec_series_info info{};
    check(bdec_series_info_get(series.get(), &info), "series info");

    std::optional<bdec_model_params> params;
    if (cfg.gamma > 0.0 && cfg.temperature > 0.0) {
        bdec_model_params p{};
        check(bdec_derived_params(&ctx.packet, &ctx.bath, &ctx.constants, lambda, ctx.area, t_o,
                                  coefficients(cfg.coefficients), &p),
              "derived parameters");
        params = p;
    }

    std::string csv = csv_preamble("purity", cfg);
    csv += "# derived.lambda=" + format17(lambda) + "\n";
    csv += "# derived.t_o=" + format17(t_o) + "\n";
    csv += "tau,purity_mc,stderr_mc,purity_eq21,purity_eq22,purity_eq23,purity_eq24\n";
    for (std::size_t i = 0; i < info.size; ++i) {
        double t = 0.0, tau = 0.0, p = 0.0, se = 0.0;
        check(bdec_series_point(series.get(), i, &t, &tau, &p, &se), "series point");
        double ff = kNaN, erg = kNaN, lyap = kNaN, asym = kNaN;
        if (params) {
            check(bdec_purity_free_flight(tau, params->a1, params->a2, &ff), "free-flight law");
            if (params->has_lyapunov)
                check(bdec_purity_lyapunov_asymptotic(tau, params->beta, params->Lambda, &asym), "asymptotic law");
            if (tau >= params->tau_o) {
                check(bdec_purity_ergodic(tau, params->tau_o, params->kT_over_Delta, &erg), "ergodic law");
                if (params->has_lyapunov)
                    check(bdec_purity_lyapunov(tau, params->b1, params->b2, params->b3, params->Lambda, &lyap),
                          "Lyapunov law");
            }
        }
        csv += format17(tau) + "," + format17(p) + "," + format17(se) + "," + format17(ff) + "," +
               format17(erg) + "," + format17(lyap) + "," + format17(asym) + "\n";
    }

    Report rep("purity");
    rep.value("n_points", std::to_string(info.size));
    rep.value("n_pairs", std::to_string(info.n_pairs));
    rep.value("lambda", lambda);
    rep.value("t_o", t_o);
    rep.value("kappa", ctx.kappa());
    if (params) {
        rep.value("a1", params->a1);
        rep.value("a2", params->a2);
        rep.value("tau_o", params->tau_o);
        rep.value("Lambda", params->Lambda);
        rep.value("beta", params->beta);
    }
    else {
        rep.line("note: closed-form columns left blank (they need gamma > 0 and T > 0)");
    }
    const double failures = info.draws == 0 ? 0.0
                                            : static_cast<double>(info.rejected_draws + info.tangency_resamples) /
                                                  static_cast<double>(info.draws);
    rep.value("failure_rate", failures);
    if (info.underflow)
        rep.line("note: some purities underflowed and are reported as 0");

    if (cfg.gamma > 0.0) {
        bdec_rate_fit fit{};
        double window[2] = {0.0, 0.0};
        const double *w = nullptr;
        if (cfg.fit_t_lo) {
            window[0] = *cfg.fit_t_lo * cfg.gamma;
            window[1] = *cfg.fit_t_hi * cfg.gamma;
            w = window;
        }
        if (bdec_fit_rate(series.get(), w, &fit) == BDEC_OK) {
            rep.value("rate_tau", fit.rate);
            rep.value("rate_t", fit.rate * cfg.gamma);
            rep.value("ratio", lambda > 0.0 ? fit.rate * cfg.gamma / (2.0 * lambda) : kNaN);
            rep.value("fit_points", std::to_string(fit.n_points));
            rep.value("window_instability", fit.instability);
        }
        else {
            rep.value("fit", std::string("failed"));
            rep.line("fit error: " + std::string(bdec_last_error()));
        }
    }

    int code = kExitOk;
    if (failures > 0.01) {
        rep.line("error: more than 1% of packet draws or propagations failed");
        code = kExitRuntime;
    }
    rep.summary_only("status", code == kExitOk ? "ok" : "runtime_error");
    emit_csv(csv, rep, cfg, out);
    return code;
}

int cmd_sweep(const RunConfig &cfg, const OutputOptions &out)
{
    Context ctx(cfg);
    double gamma_max = 0.0;
    for (double g : cfg.sweep_gamma)
        gamma_max = std::max(gamma_max, g);
    const auto times = ctx.times(ctx.t_max(gamma_max));
    const auto mc = mc_options(cfg);
    const auto lo = ctx.lyapunov_options();
    double window[2] = {0.0, 0.0};
    const double *w = nullptr;
    if (cfg.fit_t_lo) {
        window[0] = *cfg.fit_t_lo;
        window[1] = *cfg.fit_t_hi;
        w = window;
    }

    bdec_sweep *raw = nullptr;
    check(bdec_bath_sweep(ctx.domain.get(), &ctx.packet, &ctx.constants, cfg.sweep_gamma.data(),
                          cfg.sweep_gamma.size(), cfg.sweep_T.data(), cfg.sweep_T.size(), times.data(), times.size(),
                          &mc, &lo, w, &raw),
          "bath sweep");
    SweepPtr sweep(raw);

    std::string csv = csv_preamble("sweep", cfg);
    csv += "gamma,T,kappa,fitted_rate_tau,fitted_rate_t,lambda_benettin,ratio,status\n";
    std::size_t ok = 0;
    const std::size_t n = bdec_sweep_size(sweep.get());
    for (std::size_t i = 0; i < n; ++i) {
        bdec_sweep_row r{};
        check(bdec_sweep_row_get(sweep.get(), i, &r), "sweep row");
        ok += r.ok ? 1 : 0;
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        const auto fitted = [&](double v) { return r.ok ? format17(v) : std::string(); };
        csv += format17(r.gamma) + "," + format17(r.temperature) + "," + format17(r.kappa) + "," +
               fitted(r.rate_tau) + "," + fitted(r.rate_t) + "," + format17(r.lambda) + "," + fitted(r.ratio) + "," +
               status + "\n";
    }
    bdec_lyapunov_result lyap{};
    check(bdec_sweep_lyapunov(sweep.get(), &lyap), "sweep Lyapunov");
    double spread = kNaN;
    check(bdec_sweep_spread(sweep.get(), &spread), "sweep spread");

    Report rep("sweep");
    rep.value("rows", std::to_string(n));
    rep.value("rows_ok", std::to_string(ok));
    rep.value("lambda", lyap.lambda);
    rep.value("lambda_std_error", lyap.std_error);
    rep.value("spread", spread, "rate spread (max/min)");
    const int code = ok >= 1 ? kExitOk : kExitRuntime;
    if (code != kExitOk)
        rep.line("error: no sweep row produced a rate");
    rep.summary_only("status", code == kExitOk ? "ok" : "runtime_error");
    emit_csv(csv, rep, cfg, out);
    return code;
}

int cmd_oracle(const RunConfig &cfg, const OutputOptions &out)
{
    if (!(cfg.gamma > 0.0) || !(cfg.temperature > 0.0))
        throw ConfigError(cfg.gamma > 0.0 ? "bath.T" : "bath.gamma", "must be > 0 for the oracle");
    Context ctx(cfg);
    const double lambda = ctx.lambda();
    const double t_o = ctx.t_o();

    bdec_model_params p{};
    check(bdec_derived_params(&ctx.packet, &ctx.bath, &ctx.constants, lambda, ctx.area, t_o,
                              coefficients(cfg.oracle_coefficients), &p),
          "derived parameters");
    p.a1 *= cfg.oracle_a1_scale;
    p.b1 *= cfg.oracle_a1_scale;
    const bool published = cfg.oracle_coefficients == "published";

    std::vector<double> times(cfg.n_points);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = cfg.oracle_tau_max * static_cast<double>(i) / static_cast<double>(times.size() - 1) / cfg.gamma;
    const auto method = cfg.oracle_method == "numerical" ? BDEC_AVERAGE_NUMERICAL : BDEC_AVERAGE_DETERMINANT;

    auto max_deviation = [&](bdec_separation_model model, auto closed_form) {
        bdec_series *raw = nullptr;
        check(bdec_purity_quadrature(model, lambda, 0.0, &ctx.packet, &ctx.bath, &ctx.constants, times.data(),
                                     times.size(), method, &raw),
              "quadrature");
        SeriesPtr s(raw);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            double tau = 0.0, q = 0.0;
            check(bdec_series_point(s.get(), i, nullptr, &tau, &q, nullptr), "series point");
            if (q < 1e-6)
                continue;
            const double c = closed_form(tau);
            worst = std::max(worst, std::abs(c - q) / q);
        }
        return worst;
    };

    const double dev_free = max_deviation(BDEC_SEPARATION_FREE_FLIGHT, [&](double tau) {
        double v = 0.0;
        check(published ? bdec_purity_free_flight(tau, p.a1, p.a2, &v)
                        : bdec_purity_free_flight_gaussian(tau, p.a1, p.a2, &v),
              "free-flight law");
        return v;
    });
    const double dev_lyap = max_deviation(BDEC_SEPARATION_LYAPUNOV, [&](double tau) {
        double v = 0.0;
        check(bdec_purity_lyapunov(tau, p.b1, p.b2, p.b3, p.Lambda, &v), "Lyapunov law");
        return v;
    });

    const bool pass_free = dev_free <= cfg.oracle_tolerance;
    const bool pass_lyap = dev_lyap <= cfg.oracle_tolerance;
    Report rep("oracle");
    rep.value("lambda", lambda);
    rep.value("a1", p.a1);
    rep.value("a2", p.a2);
    rep.value("b1", p.b1);
    rep.value("b2", p.b2);
    rep.value("b3", p.b3);
    rep.value("Lambda", p.Lambda);
    rep.value("free_flight_max_rel_dev", dev_free, "free flight: max relative deviation");
    rep.value("free_flight", pass_free ? "PASS" : "FAIL", "free flight");
    rep.value("lyapunov_max_rel_dev", dev_lyap, "Lyapunov: max relative deviation");
    rep.value("lyapunov", pass_lyap ? "PASS" : "FAIL", "Lyapunov");
    rep.value("threshold", cfg.oracle_tolerance);
    const bool pass = pass_free && pass_lyap;
    rep.value("result", pass ? "PASS" : "FAIL");
    emit_report(rep, cfg, out);
    return pass ? kExitOk : kExitOracle;
}

int cmd_ergavg(const RunConfig &cfg, const OutputOptions &out)
{
    Context ctx(cfg);
    double analytic = 0.0, mc = 0.0, se = 0.0;
    check(bdec_ergodic_average_analytic(ctx.domain.get(), &analytic), "analytic average");
    check(bdec_ergodic_average_mc(ctx.domain.get(), cfg.ergavg_n_pairs, cfg.seed, cfg.workers, &mc, &se),
          "Monte Carlo average");
    Report rep("ergavg");
    rep.value("area", ctx.area);
    rep.value("analytic", analytic);
    rep.value("mc", mc);
    rep.value("mc_std_error", se);
    rep.value("z_score", se > 0.0 ? (mc - analytic) / se : kNaN);
    rep.value("analytic_over_area", analytic / ctx.area);
    rep.value("mc_over_area", mc / ctx.area);
    rep.value("published_constant", 1.0);
    rep.value("analytic_over_area_minus_1", analytic / ctx.area - 1.0);
    emit_report(rep, cfg, out);
    return kExitOk;
}

} // namespace bdec::cli
