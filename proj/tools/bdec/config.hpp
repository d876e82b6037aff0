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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bdec::cli {

/// Invalid or missing configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string &key, const std::string &what)
        : std::runtime_error(key + ": " + what), key_(key)
    {
    }
    const std::string &key() const { return key_; }

private:
    std::string key_;
};

struct RunConfig {
    std::string variant = "stadium";
    std::optional<double> rectangle_lx, rectangle_ly;
    std::optional<double> disk_r;
    double stadium_a = 1.0;
    double stadium_r = 1.0;
    std::optional<double> sinai_l, sinai_r;

    double hbar = 1.0;
    double mass = 1.0;
    double kB = 1.0;

    std::optional<double> rx, ry; // unset: domain centroid
    double px = 0.6;
    double py = 0.8;
    double sigma = 0.05;

    double gamma = 0.01;
    double temperature = 50.0;

    std::optional<double> t_max; // unset: min(0.5/gamma, 15/lambda)
    std::uint64_t n_points = 201;
    std::string spacing = "linear";
    double log_decades = 3.0;

    std::uint64_t n_pairs = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    std::optional<double> lambda; // unset: Benettin estimate
    std::optional<double> t_o;    // unset: mean free time estimate
    std::string coefficients = "published";

    std::optional<double> lyapunov_t_max; // unset: 1000 mean free times
    std::uint64_t lyapunov_ensemble = 32;
    double lyapunov_renorm_interval = 0.0;
    double lyapunov_d0 = 0.0;
    bool lyapunov_strict = false;

    std::uint64_t mft_ensemble = 256;
    std::optional<double> mft_t_max; // unset: 200 mean free times

    std::optional<double> fit_t_lo, fit_t_hi;

    std::vector<double> sweep_gamma{0.01};
    std::vector<double> sweep_T{50.0, 158.11388300841898, 500.0};

    std::string oracle_coefficients = "published";
    std::string oracle_method = "numerical";
    double oracle_tau_max = 0.2;
    double oracle_a1_scale = 1.0;
    double oracle_tolerance = 1e-6;

    std::uint64_t ergavg_n_pairs = 1000000;

    bool operator==(const RunConfig &) const = default;
};

/// Sets one key from its textual value. Throws ConfigError.
void set_value(RunConfig &cfg, std::string_view key, std::string_view value);

/// Applies `key=value` lines; '#' starts a comment. Throws ConfigError.
void apply_text(RunConfig &cfg, std::string_view text, std::string_view source);

void apply_file(RunConfig &cfg, const std::string &path);

/// Cross-field checks. Throws ConfigError.
void validate(const RunConfig &cfg);

/// Fully resolved key/value pairs in schema order. Keys for inactive domain
/// variants are omitted; `include_workers` controls mc.workers so that
/// outputs stay identical across worker counts.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig &cfg, bool include_workers = true);

/// resolved_entries rendered as lines, each prefixed by `prefix`.
std::string echo(const RunConfig &cfg, std::string_view prefix, bool include_workers = true);

/// Inverse of echo: reads the prefixed key=value lines back.
RunConfig parse_echo(std::string_view text, std::string_view prefix);

/// All recognised keys.
std::vector<std::string> known_keys();

/// Shortest text that parses back to exactly `v`.
std::string format_shortest(double v);

} // namespace bdec::cli
