// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qident {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed `.qc` or statevector text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally invalid circuit, gate or argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Dense simulation limit exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

/// Iterative or direct numerical method failed.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Membership circuit does not define a clean subspace, or the subspace
/// is not invariant under the operator being restricted.
class SubspaceError : public Error {
public:
    enum class Kind { NotCleanMembership, NotInvariant, Empty };

    SubspaceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace qident
