#pragma once

#include <stdexcept>
#include <string>

namespace expblowup {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested value diverges (e.g. a negative power evaluated at s = 0).
class SingularityError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, decimal strings, configuration values).
class InputError : public Error {
public:
    using Error::Error;
};

/// The peak of the solution is not at the centre node, so the x_i <= 1
/// chart is not admissible.
class ReframeNeeded : public Error {
public:
    using Error::Error;
};

/// A validated step could not be completed down to the minimum step size.
class StepFailure : public Error {
public:
    using Error::Error;
};

/// The integration budget ran out before the stop condition fired.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// Negative definiteness could not be certified on the candidate box.
class ValidationFailure : public Error {
public:
    using Error::Error;
};

/// A state invariant (x_i <= 1) is violated by an enclosure.
class InvariantBreach : public StepFailure {
public:
    using StepFailure::StepFailure;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace expblowup
