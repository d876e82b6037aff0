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

#include "bdec/bdec.h"

#include <memory>
#include <stdexcept>
#include <string>

namespace bdec::cli {

class ApiError : public std::runtime_error {
public:
    ApiError(bdec_status status, const std::string &what) : std::runtime_error(what), status_(status) {}
    bdec_status status() const { return status_; }

private:
    bdec_status status_;
};

inline void check(bdec_status s, const char *what)
{
    if (s != BDEC_OK)
        throw ApiError(s, std::string(what) + ": " + bdec_last_error());
}

struct DomainDeleter {
    void operator()(bdec_domain *d) const { bdec_domain_destroy(d); }
};
struct SeriesDeleter {
    void operator()(bdec_series *s) const { bdec_series_destroy(s); }
};
struct SweepDeleter {
    void operator()(bdec_sweep *s) const { bdec_sweep_destroy(s); }
};

using DomainPtr = std::unique_ptr<bdec_domain, DomainDeleter>;
using SeriesPtr = std::unique_ptr<bdec_series, SeriesDeleter>;
using SweepPtr = std::unique_ptr<bdec_sweep, SweepDeleter>;

} // namespace bdec::cli
