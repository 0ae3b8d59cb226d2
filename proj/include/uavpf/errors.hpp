#pragma once

#include <stdexcept>
#include <string>

namespace uavpf {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, unknown flags, out-of-range parameters.
class UsageError : public Error {
public:
    using Error::Error;
};

// A position that is not a member of the flight grid.
class InvalidPositionError : public Error {
public:
    using Error::Error;
};

// Zero-distance or otherwise undefined link geometry.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

// Constraints cannot be met (QoS floors exceed a budget, etc.).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// An iterative solver hit its iteration cap.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// An exhaustive search was asked to enumerate too large a space.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

// Paired comparison over result sets that do not share seeds.
class PairingError : public Error {
public:
    using Error::Error;
};

} // namespace uavpf
