#pragma once

#include <stdexcept>

namespace searchstop {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A distribution was required to dominate another and does not.
struct AbsoluteContinuityViolation : Error {
    using Error::Error;
};

// step() was called on a sequential test that has already stopped.
struct StepAfterStop : Error {
    using Error::Error;
};

// Some pair of hypotheses cannot be told apart by any experiment.
struct DegenerateModel : Error {
    using Error::Error;
};

// A safety cap on run length was hit before the scheme stopped.
struct HorizonExceeded : Error {
    using Error::Error;
};

// summarize() was asked to aggregate an empty record set.
struct EmptyBatch : Error {
    using Error::Error;
};

// An experiment configuration failed validation.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace searchstop
