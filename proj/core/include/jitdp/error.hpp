#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jitdp {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A required column is absent from a CSV header.
class SchemaError : public Error {
public:
    SchemaError(const std::string& column, const std::string& detail)
        : Error("schema error: missing required column " + column + " (" + detail + ")"),
          column_(column) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

// A data row could not be parsed or violates the record invariants.
class RowError : public Error {
public:
    RowError(std::size_t line, const std::string& detail)
        : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

// LA and LD are not rankable.
class RejectedMetricError : public Error {
public:
    using Error::Error;
};

// Training data cannot support the requested model.
class UnfitError : public Error {
public:
    using Error::Error;
};

// Fewer than six month buckets.
class InsufficientHistoryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace jitdp
