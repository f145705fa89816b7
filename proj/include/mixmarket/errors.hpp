#pragma once

#include <stdexcept>
#include <string>

namespace mixmarket {

/// Raised when a market configuration is malformed or violates a parameter
/// constraint. Carries the offending line and key when known (line 0 = n/a).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line = 0, std::string key = {})
        : std::runtime_error(std::move(message)), line_(line), key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

/// Raised when a solver entry point is handed a distribution whose virtual
/// value is not strictly increasing on the check grid.
class RegularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a root bracket loses its sign change or an iteration fails to
/// settle. Signals an implementation bug or numerically hostile inputs, not
/// a user error.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mixmarket
