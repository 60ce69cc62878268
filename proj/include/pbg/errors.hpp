#pragma once

#include <stdexcept>
#include <string>

namespace pbg {

// Bad user-facing parameters (CLI / config file). Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical contract was violated at runtime (non-convergence, divergence,
// precondition on computed data). Maps to exit code 3.
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pbg
