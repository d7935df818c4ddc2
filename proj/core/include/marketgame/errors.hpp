#pragma once

#include <stdexcept>
#include <string>

namespace marketgame {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by simplex construction when the input has negative entries or no mass.
class NonPositiveMass : public Error {
public:
    using Error::Error;
};

// A payoff or strategy spec object violates its construction contract.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// The growth distribution has E ln rho <= 0.
class NonPositiveDrift : public Error {
public:
    using Error::Error;
};

class SeparationViolated : public Error {
public:
    using Error::Error;
};

class FloorViolated : public Error {
public:
    using Error::Error;
};

// The relative-payoff support is linearly dependent; separation bounds are undefined.
class LinearDependence : public Error {
public:
    using Error::Error;
};

// Too many Monte Carlo paths failed to cross a level before the horizon.
class CensoringExceeded : public Error {
public:
    using Error::Error;
};

// An analytic bound was queried outside its domain (e.g. level below initial wealth).
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

} // namespace marketgame
