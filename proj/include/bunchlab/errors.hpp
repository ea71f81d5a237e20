// Copyright 2026 The bunchlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BUNCHLAB_ERRORS_HPP
#define BUNCHLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bunchlab {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes (see tools/bunchlab.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch or non-square input.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Value outside the mathematical domain of an operation (not PSD, not unitary, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a hard size guard (e.g. permanent dimension > 24).
class SizeError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// Two numerical routes that must agree did not.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Embedded reference data failed its checksum.
class DataCorruptionError : public Error {
public:
    using Error::Error;
};

/// Malformed file or JSON document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace bunchlab

#endif  // BUNCHLAB_ERRORS_HPP
