// Copyright 2026 The librasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace libra {

/// Base class for all librasim errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A domain value violates an invariant. Carries the offending field name.
class ValidationError : public Error {
public:
    ValidationError(std::string field, double value)
        : Error("validation error: field '" + field + "' has invalid value " +
                std::to_string(value)),
          field_(std::move(field)),
          value_(value) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::string field_;
    double value_;
};

/// Invalid run, cluster, or policy configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure (open, read, write).
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed trace or config file content. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Node ledger protocol violation: reservation overflow, missing reservation,
/// or an equal split that breaks a job's minimum share. These indicate a bug
/// in the caller, not bad user input.
class LedgerError : public Error {
public:
    using Error::Error;
};

/// An internal invariant broke mid-run. Always a simulator bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace libra
