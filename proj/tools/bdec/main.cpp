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

#include "capi.hpp"
#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace bdec::cli;

struct Override {
    std::string key;
    std::string value;
};

/// Pulls `--some.key value` and `--some.key=value` out of argv; CLI11 sees
/// the rest.
std::vector<Override> extract_overrides(std::vector<std::string> &args)
{
    std::vector<Override> found;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &a = args[i];
        const auto eq = a.find('=');
        const std::string name = a.substr(0, eq);
        if (!a.starts_with("--") || name.find('.') == std::string::npos) {
            rest.push_back(a);
            continue;
        }
        if (eq != std::string::npos) {
            found.push_back({name.substr(2), a.substr(eq + 1)});
        }
        else {
            if (i + 1 >= args.size())
                throw ConfigError(name.substr(2), "missing value");
            found.push_back({name.substr(2), args[++i]});
        }
    }
    args = std::move(rest);
    return found;
}

} // namespace

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<Override> overrides;
    try {
        overrides = extract_overrides(args);
    }
    catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    CLI::App app{"Semiclassical purity decay in chaotic billiards under a high-temperature bath"};
    app.set_version_flag("--version", std::string(bdec_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    bool summary = false;
    bool strict = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_path, "output path for the CSV or report");
    app.add_option("--seed", seed, "random seed (mc.seed)");
    app.add_option("--workers", workers, "worker threads (mc.workers)")->check(CLI::Range(1u, 1024u));
    app.add_flag("--summary", summary, "print a one-line key=value summary");
    app.add_flag("--strict", strict, "exit 3 when the Lyapunov estimate has not converged");
    app.footer("Any configuration key can be given as --<key> <value>, e.g. --bath.gamma 0.02.");

    using Command = int (*)(const RunConfig &, const OutputOptions &);
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"lyapunov", "Benettin estimate of the Lyapunov exponent", &cmd_lyapunov},
        {"purity", "Monte Carlo purity with the closed-form laws (CSV)", &cmd_purity},
        {"sweep", "bath-parameter sweep of the fitted decay rate (CSV)", &cmd_sweep},
        {"oracle", "closed-form laws against quadrature", &cmd_oracle},
        {"ergavg", "ergodic mean squared separation over the table", &cmd_ergavg},
    };
    for (const auto &[name, help, fn] : commands)
        app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunConfig cfg;
    OutputOptions out;
    out.summary = summary;
    if (!out_path.empty())
        out.out_path = out_path;
    try {
        if (!config_path.empty())
            apply_file(cfg, config_path);
        for (const auto &o : overrides)
            set_value(cfg, o.key, o.value);
        if (seed)
            cfg.seed = *seed;
        if (workers)
            cfg.workers = *workers;
        if (strict)
            cfg.lyapunov_strict = true;
        validate(cfg);

        for (const auto &[name, help, fn] : commands)
            if (app.got_subcommand(name))
                return fn(cfg, out);
    }
    catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const ApiError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
