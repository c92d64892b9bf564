// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Exception hierarchy shared by every zo module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector lengths disagree, or a dimension is zero.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An input lies outside the domain of the operation (e.g. a non-finite parameter).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A scalar or configuration argument violates its documented constraint.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A relative error was requested against an all-zero reference.
class UndefinedReferenceError : public Error {
public:
    using Error::Error;
};

/// Bad command line or configuration file contents.
class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// An objective evaluation (or a quantity derived from one) came back non-finite.
/// Carries the parameter vector at which it happened.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::vector<double> theta)
        : Error(what), theta_(std::move(theta)) {}

    const std::vector<double>& theta() const noexcept { return theta_; }

private:
    std::vector<double> theta_;
};

inline void require_same_dim(std::size_t got, std::size_t expected, const char* what) {
    if (got != expected) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                             ", got " + std::to_string(got));
    }
}

} // namespace zo
