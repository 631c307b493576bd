#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected specification text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

/// An exploration visited more states than the configured cap.
class StateLimitExceeded : public Error {
public:
    StateLimitExceeded(std::string what, std::size_t limit);
    std::size_t limit() const { return limit_; }

private:
    std::size_t limit_;
};

class NotEnabled : public Error {
public:
    using Error::Error;
};

} // namespace cfm
