#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csrrt {

/// Precondition violated by the caller (dimension mismatch, joint limits, bad ids).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not line-oriented.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough free space to draw the requested samples.
class ClutteredError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace csrrt
