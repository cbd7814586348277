#pragma once

#include <stdexcept>
#include <string>

namespace rydcz {

// Precondition / type-invariant violation.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive integration could not proceed (step-size underflow).  Carries the
// last time that was reached successfully.
class IntegrationFailure : public std::runtime_error {
public:
    IntegrationFailure(const std::string& what, double t_last)
        : std::runtime_error(what + " (last good time t = " + std::to_string(t_last) + " us)"),
          t_last_good(t_last) {}
    double t_last_good;
};

// A formula was evaluated outside its regime of validity (e.g. OD <= 1).
class OutOfRegime : public std::runtime_error {
public:
    explicit OutOfRegime(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / input-file problem.  key_path identifies the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string key = {})
        : std::runtime_error(key.empty() ? what : what + " [key: " + key + "]"),
          key_path(std::move(key)) {}
    std::string key_path;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rydcz
