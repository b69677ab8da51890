#pragma once

#include <stdexcept>
#include <string>

namespace vsp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

// Lyapunov/Riccati: no solution exists for the given data (e.g. A not Hurwitz).
struct NoSolutionError : Error {
    using Error::Error;
};

// A solver produced a result whose residual exceeds its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

struct SynthesisError : Error {
    using Error::Error;
};

// A passivity/activity certificate could not be established.
struct CertificationError : Error {
    CertificationError(const std::string& msg, double failing_time = -1.0)
        : Error(msg), first_failing_time(failing_time) {}
    double first_failing_time;
};

// Closed-loop state became non-finite.
struct SimulationError : Error {
    SimulationError(const std::string& msg, double bad_time = -1.0)
        : Error(msg), first_bad_time(bad_time) {}
    double first_bad_time;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace vsp
