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

#include "config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace bdec::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, v);
    if (text.empty() || r.ec != std::errc() || r.ptr != end)
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    if (!std::isfinite(v))
        throw ConfigError(std::string(key), "must be finite");
    return v;
}

double parse_positive(std::string_view key, std::string_view text)
{
    const double v = parse_double(key, text);
    if (!(v > 0.0))
        throw ConfigError(std::string(key), "must be > 0");
    return v;
}

double parse_non_negative(std::string_view key, std::string_view text)
{
    const double v = parse_double(key, text);
    if (!(v >= 0.0))
        throw ConfigError(std::string(key), "must be >= 0");
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto *end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, v);
    if (text.empty() || r.ec != std::errc() || r.ptr != end)
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::string parse_choice(std::string_view key, std::string_view text, std::initializer_list<std::string_view> choices)
{
    text = trim(text);
    std::string allowed;
    for (auto c : choices) {
        if (text == c)
            return std::string(text);
        allowed += allowed.empty() ? "" : ", ";
        allowed += c;
    }
    throw ConfigError(std::string(key), "expected one of " + allowed + ", got '" + std::string(text) + "'");
}

bool is_auto(std::string_view text) { return trim(text) == "auto"; }

std::optional<double> parse_auto_positive(std::string_view key, std::string_view text)
{
    if (is_auto(text))
        return std::nullopt;
    return parse_positive(key, text);
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    text = trim(text);
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_non_negative(key, text.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string show(std::optional<double> v) { return v ? format_shortest(*v) : "auto"; }
std::string show(double v) { return format_shortest(v); }
std::string show(std::uint64_t v) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }

std::string show(const std::vector<double> &v)
{
    std::string s;
    for (double x : v) {
        if (!s.empty())
            s += ',';
        s += format_shortest(x);
    }
    return s;
}

struct Field {
    std::string_view key;
    std::function<void(RunConfig &, std::string_view key, std::string_view value)> set;
    // nullopt: not part of the resolved config for this run.
    std::function<std::optional<std::string>(const RunConfig &)> get;
};

std::function<std::optional<std::string>(const RunConfig &)> when_variant(
    std::string_view variant, std::function<std::string(const RunConfig &)> get)
{
    return [variant, get](const RunConfig &c) -> std::optional<std::string> {
        if (c.variant != variant)
            return std::nullopt;
        return get(c);
    };
}

const std::vector<Field> &schema()
{
    static const std::vector<Field> fields = {
        {"domain.variant",
         [](RunConfig &c, auto k, auto v) { c.variant = parse_choice(k, v, {"rectangle", "disk", "stadium", "sinai"}); },
         [](const RunConfig &c) { return c.variant; }},
        {"rectangle.lx", [](RunConfig &c, auto k, auto v) { c.rectangle_lx = parse_positive(k, v); },
         when_variant("rectangle", [](const RunConfig &c) { return show(c.rectangle_lx); })},
        {"rectangle.ly", [](RunConfig &c, auto k, auto v) { c.rectangle_ly = parse_positive(k, v); },
         when_variant("rectangle", [](const RunConfig &c) { return show(c.rectangle_ly); })},
        {"disk.r", [](RunConfig &c, auto k, auto v) { c.disk_r = parse_positive(k, v); },
         when_variant("disk", [](const RunConfig &c) { return show(c.disk_r); })},
        {"stadium.a", [](RunConfig &c, auto k, auto v) { c.stadium_a = parse_positive(k, v); },
         when_variant("stadium", [](const RunConfig &c) { return show(c.stadium_a); })},
        {"stadium.r", [](RunConfig &c, auto k, auto v) { c.stadium_r = parse_positive(k, v); },
         when_variant("stadium", [](const RunConfig &c) { return show(c.stadium_r); })},
        {"sinai.l", [](RunConfig &c, auto k, auto v) { c.sinai_l = parse_positive(k, v); },
         when_variant("sinai", [](const RunConfig &c) { return show(c.sinai_l); })},
        {"sinai.r", [](RunConfig &c, auto k, auto v) { c.sinai_r = parse_positive(k, v); },
         when_variant("sinai", [](const RunConfig &c) { return show(c.sinai_r); })},

        {"constants.hbar", [](RunConfig &c, auto k, auto v) { c.hbar = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.hbar); }},
        {"constants.mass", [](RunConfig &c, auto k, auto v) { c.mass = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.mass); }},
        {"constants.kB", [](RunConfig &c, auto k, auto v) { c.kB = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.kB); }},

        {"packet.rx", [](RunConfig &c, auto k, auto v) { c.rx = is_auto(v) ? std::nullopt : std::optional(parse_double(k, v)); },
         [](const RunConfig &c) { return show(c.rx); }},
        {"packet.ry", [](RunConfig &c, auto k, auto v) { c.ry = is_auto(v) ? std::nullopt : std::optional(parse_double(k, v)); },
         [](const RunConfig &c) { return show(c.ry); }},
        {"packet.px", [](RunConfig &c, auto k, auto v) { c.px = parse_double(k, v); },
         [](const RunConfig &c) { return show(c.px); }},
        {"packet.py", [](RunConfig &c, auto k, auto v) { c.py = parse_double(k, v); },
         [](const RunConfig &c) { return show(c.py); }},
        {"packet.sigma", [](RunConfig &c, auto k, auto v) { c.sigma = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.sigma); }},

        {"bath.gamma", [](RunConfig &c, auto k, auto v) { c.gamma = parse_non_negative(k, v); },
         [](const RunConfig &c) { return show(c.gamma); }},
        {"bath.T", [](RunConfig &c, auto k, auto v) { c.temperature = parse_non_negative(k, v); },
         [](const RunConfig &c) { return show(c.temperature); }},

        {"time.t_max", [](RunConfig &c, auto k, auto v) { c.t_max = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.t_max); }},
        {"time.n_points", [](RunConfig &c, auto k, auto v) { c.n_points = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.n_points); }},
        {"time.spacing", [](RunConfig &c, auto k, auto v) { c.spacing = parse_choice(k, v, {"linear", "log"}); },
         [](const RunConfig &c) { return c.spacing; }},
        {"time.log_decades", [](RunConfig &c, auto k, auto v) { c.log_decades = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.log_decades); }},

        {"mc.n_pairs", [](RunConfig &c, auto k, auto v) { c.n_pairs = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.n_pairs); }},
        {"mc.seed", [](RunConfig &c, auto k, auto v) { c.seed = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.seed); }},
        {"mc.workers",
         [](RunConfig &c, auto k, auto v) {
             const auto w = parse_u64(k, v);
             if (w < 1 || w > 1024)
                 throw ConfigError(std::string(k), "must be between 1 and 1024");
             c.workers = static_cast<unsigned>(w);
         },
         [](const RunConfig &c) { return show(std::uint64_t{c.workers}); }},

        {"model.lambda", [](RunConfig &c, auto k, auto v) { c.lambda = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.lambda); }},
        {"model.t_o", [](RunConfig &c, auto k, auto v) { c.t_o = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.t_o); }},
        {"model.coefficients",
         [](RunConfig &c, auto k, auto v) { c.coefficients = parse_choice(k, v, {"published", "gaussian-average"}); },
         [](const RunConfig &c) { return c.coefficients; }},

        {"lyapunov.t_max", [](RunConfig &c, auto k, auto v) { c.lyapunov_t_max = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.lyapunov_t_max); }},
        {"lyapunov.ensemble", [](RunConfig &c, auto k, auto v) { c.lyapunov_ensemble = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.lyapunov_ensemble); }},
        {"lyapunov.renorm_interval",
         [](RunConfig &c, auto k, auto v) { c.lyapunov_renorm_interval = parse_non_negative(k, v); },
         [](const RunConfig &c) { return show(c.lyapunov_renorm_interval); }},
        {"lyapunov.d0", [](RunConfig &c, auto k, auto v) { c.lyapunov_d0 = parse_non_negative(k, v); },
         [](const RunConfig &c) { return show(c.lyapunov_d0); }},
        {"lyapunov.strict", [](RunConfig &c, auto k, auto v) { c.lyapunov_strict = parse_bool(k, v); },
         [](const RunConfig &c) { return show(c.lyapunov_strict); }},

        {"mft.ensemble", [](RunConfig &c, auto k, auto v) { c.mft_ensemble = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.mft_ensemble); }},
        {"mft.t_max", [](RunConfig &c, auto k, auto v) { c.mft_t_max = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.mft_t_max); }},

        {"fit.t_lo",
         [](RunConfig &c, auto k, auto v) {
             c.fit_t_lo = is_auto(v) ? std::nullopt : std::optional(parse_non_negative(k, v));
         },
         [](const RunConfig &c) { return show(c.fit_t_lo); }},
        {"fit.t_hi", [](RunConfig &c, auto k, auto v) { c.fit_t_hi = parse_auto_positive(k, v); },
         [](const RunConfig &c) { return show(c.fit_t_hi); }},

        {"sweep.gamma", [](RunConfig &c, auto k, auto v) { c.sweep_gamma = parse_list(k, v); },
         [](const RunConfig &c) { return show(c.sweep_gamma); }},
        {"sweep.T", [](RunConfig &c, auto k, auto v) { c.sweep_T = parse_list(k, v); },
         [](const RunConfig &c) { return show(c.sweep_T); }},

        {"oracle.coefficients",
         [](RunConfig &c, auto k, auto v) { c.oracle_coefficients = parse_choice(k, v, {"published", "gaussian-average"}); },
         [](const RunConfig &c) { return c.oracle_coefficients; }},
        {"oracle.method",
         [](RunConfig &c, auto k, auto v) { c.oracle_method = parse_choice(k, v, {"numerical", "determinant"}); },
         [](const RunConfig &c) { return c.oracle_method; }},
        {"oracle.tau_max", [](RunConfig &c, auto k, auto v) { c.oracle_tau_max = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.oracle_tau_max); }},
        {"oracle.a1_scale", [](RunConfig &c, auto k, auto v) { c.oracle_a1_scale = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.oracle_a1_scale); }},
        {"oracle.tolerance", [](RunConfig &c, auto k, auto v) { c.oracle_tolerance = parse_positive(k, v); },
         [](const RunConfig &c) { return show(c.oracle_tolerance); }},

        {"ergavg.n_pairs", [](RunConfig &c, auto k, auto v) { c.ergavg_n_pairs = parse_u64(k, v); },
         [](const RunConfig &c) { return show(c.ergavg_n_pairs); }},
    };
    return fields;
}

const Field *find_field(std::string_view key)
{
    for (const auto &f : schema())
        if (f.key == key)
            return &f;
    return nullptr;
}

} // namespace

std::string format_shortest(double v)
{
    std::array<char, 64> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

std::vector<std::string> known_keys()
{
    std::vector<std::string> keys;
    for (const auto &f : schema())
        keys.emplace_back(f.key);
    return keys;
}

void set_value(RunConfig &cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    const Field *f = find_field(key);
    if (!f)
        throw ConfigError(std::string(key), "unknown key");
    if (trim(value).empty())
        throw ConfigError(std::string(key), "empty value");
    f->set(cfg, key, trim(value));
}

void apply_text(RunConfig &cfg, std::string_view text, std::string_view source)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no), "expected key=value");
        set_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void apply_file(RunConfig &cfg, const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_text(cfg, ss.str(), path);
}

void validate(const RunConfig &cfg)
{
    auto require = [](const std::optional<double> &v, const char *key, const std::string &variant) {
        if (!v)
            throw ConfigError(key, "required for domain.variant=" + variant);
    };
    if (cfg.variant == "rectangle") {
        require(cfg.rectangle_lx, "rectangle.lx", cfg.variant);
        require(cfg.rectangle_ly, "rectangle.ly", cfg.variant);
    }
    else if (cfg.variant == "disk") {
        require(cfg.disk_r, "disk.r", cfg.variant);
    }
    else if (cfg.variant == "sinai") {
        require(cfg.sinai_l, "sinai.l", cfg.variant);
        require(cfg.sinai_r, "sinai.r", cfg.variant);
        if (!(2.0 * *cfg.sinai_r < *cfg.sinai_l))
            throw ConfigError("sinai.r", "obstacle diameter must be smaller than sinai.l");
    }
    if (cfg.px == 0.0 && cfg.py == 0.0)
        throw ConfigError("packet.px", "packet momentum must be non-zero");
    if (cfg.n_points < 2)
        throw ConfigError("time.n_points", "must be at least 2");
    if (cfg.n_pairs < 100)
        throw ConfigError("mc.n_pairs", "must be at least 100");
    if (cfg.lyapunov_ensemble < 2)
        throw ConfigError("lyapunov.ensemble", "must be at least 2");
    if (cfg.mft_ensemble < 2)
        throw ConfigError("mft.ensemble", "must be at least 2");
    if (cfg.ergavg_n_pairs < 2)
        throw ConfigError("ergavg.n_pairs", "must be at least 2");
    if (cfg.fit_t_lo.has_value() != cfg.fit_t_hi.has_value())
        throw ConfigError(cfg.fit_t_lo ? "fit.t_hi" : "fit.t_lo", "fit.t_lo and fit.t_hi must be set together");
    if (cfg.fit_t_lo && !(*cfg.fit_t_lo < *cfg.fit_t_hi))
        throw ConfigError("fit.t_hi", "must exceed fit.t_lo");
    if (cfg.sweep_gamma.size() != 1 && cfg.sweep_T.size() != 1 && cfg.sweep_gamma.size() != cfg.sweep_T.size())
        throw ConfigError("sweep.T", "sweep.gamma and sweep.T must have equal lengths or one of them a single value");
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig &cfg, bool include_workers)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &f : schema()) {
        if (!include_workers && f.key == "mc.workers")
            continue;
        if (auto v = f.get(cfg))
            out.emplace_back(std::string(f.key), std::move(*v));
    }
    return out;
}

std::string echo(const RunConfig &cfg, std::string_view prefix, bool include_workers)
{
    std::string s;
    for (const auto &[k, v] : resolved_entries(cfg, include_workers)) {
        s += prefix;
        s += k;
        s += '=';
        s += v;
        s += '\n';
    }
    return s;
}

RunConfig parse_echo(std::string_view text, std::string_view prefix)
{
    RunConfig cfg;
    std::string body;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.starts_with(prefix))
            continue;
        line.remove_prefix(prefix.size());
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || !find_field(trim(line.substr(0, eq))))
            continue;
        body.append(line);
        body += '\n';
    }
    apply_text(cfg, body, "echo");
    return cfg;
}

} // namespace bdec::cli
