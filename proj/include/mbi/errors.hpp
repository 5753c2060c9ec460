/**
 * Copyright 2026 The mbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MBI_ERRORS_HPP
#define MBI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mbi {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero or mismatched matrix/vector dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Port index outside 1..m, duplicated input port, malformed list.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a hard cost cap (n! loops, enumeration size).
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A result violated a mathematical invariant beyond tolerance.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Operation is not defined for the given arguments (law does not apply,
/// wrong particle class, undefined statistic).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid file contents.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace mbi

#endif
