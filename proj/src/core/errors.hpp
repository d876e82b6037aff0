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

#include <stdexcept>
#include <string>

namespace bdec {

/// Base of every error raised by the core library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid domain, or a point that should be inside the domain is not.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Grazing hit on a curved wall or a hit on a corner. The caller resamples.
class TangencyError : public Error {
public:
    using Error::Error;
};

class ReflectError : public Error {
public:
    using Error::Error;
};

/// Time or parameter outside the range an operation is defined on.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Parameter values outside the mathematical domain of a formula.
class DomainError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

} // namespace bdec
