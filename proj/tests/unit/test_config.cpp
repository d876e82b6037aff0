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

#include <doctest.h>

#include "config.hpp"

#include <cmath>
#include <string>

using namespace bdec::cli;

namespace {

std::string error_key(RunConfig &cfg, const std::string &key, const std::string &value)
{
    try {
        set_value(cfg, key, value);
        validate(cfg);
    }
    catch (const ConfigError &e) {
        return e.key();
    }
    return {};
}

} // namespace

TEST_CASE("defaults validate")
{
    RunConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    CHECK(cfg.variant == "stadium");
    CHECK(cfg.n_points == 201);
    CHECK(cfg.sweep_T.size() == 3);
}

TEST_CASE("text parsing with comments and whitespace")
{
    RunConfig cfg;
    apply_text(cfg,
               "# comment\n"
               "domain.variant = disk\n"
               "disk.r=2.5   # trailing\n"
               "\n"
               "bath.T = 1e-3\n"
               "sweep.T = 1, 2,3\n"
               "lyapunov.strict = true\n",
               "test");
    CHECK(cfg.variant == "disk");
    CHECK(cfg.disk_r == 2.5);
    CHECK(cfg.temperature == 1e-3);
    CHECK(cfg.sweep_T == std::vector<double>{1, 2, 3});
    CHECK(cfg.lyapunov_strict);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("errors name the offending key")
{
    RunConfig cfg;
    CHECK(error_key(cfg, "bath.gamma", "-1") == "bath.gamma");
    cfg = {};
    CHECK(error_key(cfg, "packet.sigma", "abc") == "packet.sigma");
    cfg = {};
    CHECK(error_key(cfg, "no.such.key", "1") == "no.such.key");
    cfg = {};
    CHECK(error_key(cfg, "domain.variant", "disk") == "disk.r");
    cfg = {};
    CHECK(error_key(cfg, "time.spacing", "cubic") == "time.spacing");
    cfg = {};
    CHECK(error_key(cfg, "mc.n_pairs", "5") == "mc.n_pairs");
    cfg = {};
    CHECK(error_key(cfg, "model.coefficients", "other") == "model.coefficients");
    cfg = {};
    CHECK_THROWS_AS(apply_text(cfg, "bath.gamma 0.1\n", "inline"), ConfigError);
    CHECK_THROWS_AS(apply_file(cfg, "/nonexistent/bdec.conf"), ConfigError);
}

TEST_CASE("echo round-trips the resolved configuration")
{
    RunConfig cfg;
    apply_text(cfg,
               "domain.variant=sinai\nsinai.l=2\nsinai.r=0.3\npacket.rx=0.9\npacket.ry=0.1\n"
               "bath.T=0.1\nmodel.lambda=0.42298\nsweep.gamma=0.01,0.02,0.03\nfit.t_lo=1\nfit.t_hi=3\n"
               "packet.sigma=0.1\n",
               "test");
    validate(cfg);
    const std::string text = echo(cfg, "# ");
    CHECK(text.find("sinai.l=2") != std::string::npos);
    CHECK(text.find("stadium.a") == std::string::npos);
    CHECK(text.find("time.t_max=auto") != std::string::npos);
    const RunConfig back = parse_echo(text, "# ");
    CHECK(back == cfg);
    CHECK(echo(back, "# ") == text);

    RunConfig def;
    CHECK(parse_echo(echo(def, ""), "") == def);
    CHECK(echo(def, "", false).find("mc.workers") == std::string::npos);
}

TEST_CASE("shortest formatting is exact")
{
    for (double v : {0.1, 1.0 / 3.0, 6.25e-18, 158.11388300841898, 1e300, 1e-300}) {
        const std::string s = format_shortest(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_shortest(0.5) == "0.5");
}

TEST_CASE("every known key is settable from its echoed value")
{
    RunConfig cfg;
    const auto keys = known_keys();
    CHECK(keys.size() > 40);
    for (const auto &[k, v] : resolved_entries(cfg)) {
        RunConfig c2;
        CHECK_NOTHROW(set_value(c2, k, v));
    }
}
