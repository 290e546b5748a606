#pragma once

#include <stdexcept>
#include <string>

namespace lozi {

/// Non-finite coordinates, zero tangent vectors and similar input faults.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A parameter is outside the range where an operation is meaningful (e.g. a <= 4).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation is not defined for the given configuration (e.g. fixed points of a nonautonomous map).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConeMembershipError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Orbit left the square S at `step` (signed, relative to the anchor).
class EscapeError : public std::runtime_error {
public:
    EscapeError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// Orbit hit x = 0 at `step`, where the symbol is ambiguous.
class BoundaryAmbiguityError : public std::runtime_error {
public:
    BoundaryAmbiguityError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// Requested tolerance not reachable with the supplied symbol word.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A periodic point lands on the boundary of S instead of strictly inside.
class BoundaryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lozi
