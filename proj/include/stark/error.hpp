#pragma once

#include <stdexcept>
#include <string>

namespace stark {

// Input that cannot be parsed or violates a documented precondition.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class DomainError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

enum class Failure {
    pole_proximity,
    sector,
    step_underflow,
    zero_wavenumber,
    transmission_pole,
    boundary_zero,
    degenerate,
    no_convergence,
    escaped_domain,
    depth_exceeded,
    f_too_small,
    g_pole,
    guard_violation,
    width_underflow,
};

const char* failure_name(Failure kind);

// A computation that was well posed but could not be completed numerically.
class NumericalError : public std::runtime_error {
public:
    NumericalError(Failure kind, const std::string& what)
        : std::runtime_error(std::string(failure_name(kind)) + ": " + what), kind_(kind) {}
    Failure kind() const { return kind_; }

private:
    Failure kind_;
};

inline const char* failure_name(Failure kind) {
    switch (kind) {
    case Failure::pole_proximity: return "pole-proximity";
    case Failure::sector: return "sector";
    case Failure::step_underflow: return "step-underflow";
    case Failure::zero_wavenumber: return "zero-wavenumber";
    case Failure::transmission_pole: return "transmission-pole";
    case Failure::boundary_zero: return "boundary-zero";
    case Failure::degenerate: return "degenerate";
    case Failure::no_convergence: return "no-convergence";
    case Failure::escaped_domain: return "escaped-domain";
    case Failure::depth_exceeded: return "depth-exceeded";
    case Failure::f_too_small: return "f-too-small";
    case Failure::g_pole: return "g-pole";
    case Failure::guard_violation: return "guard-violation";
    case Failure::width_underflow: return "width-underflow";
    }
    return "unknown";
}

} // namespace stark
