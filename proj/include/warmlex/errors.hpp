#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warmlex {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value or argument outside its documented domain (score out of range,
// empty aggregation input, mismatched vector lengths).
class DomainError : public Error {
public:
    using Error::Error;
};

// Structurally readable input whose content is unusable: duplicate terms,
// empty joins, no surviving annotations.
class DataError : public Error {
public:
    using Error::Error;
};

// Correlation requested on a zero-variance vector.
class UndefinedCorrelationError : public DataError {
public:
    using DataError::DataError;
};

// Malformed input file; carries the 1-based line number of the offending row.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, std::size_t line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace warmlex
