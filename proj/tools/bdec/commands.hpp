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

#include "config.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace bdec::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitConvergence = 3,
    kExitRuntime = 4,
    kExitOracle = 5,
};

struct OutputOptions {
    std::optional<std::string> out_path;
    bool summary = false;
};

int cmd_lyapunov(const RunConfig &cfg, const OutputOptions &out);
int cmd_purity(const RunConfig &cfg, const OutputOptions &out);
int cmd_sweep(const RunConfig &cfg, const OutputOptions &out);
int cmd_oracle(const RunConfig &cfg, const OutputOptions &out);
int cmd_ergavg(const RunConfig &cfg, const OutputOptions &out);

/// 17 significant digits; empty for NaN.
std::string format17(double v);

} // namespace bdec::cli
