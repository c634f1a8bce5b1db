// errors.hpp — exception hierarchy shared by all solver modules.

#pragma once

#include <stdexcept>

namespace nwave {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (empty grids, bad dimensions, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// One-step integrator cannot meet its accuracy guard at the given step size.
class IntegrationFailure : public Error {
public:
    using Error::Error;
};

// A spectral sample sits on (or too close to) the square-root branch cut.
class BranchPointOnGrid : public Error {
public:
    using Error::Error;
};

// Picard iteration for the triangular integral equation did not contract.
class ContractionFailure : public Error {
public:
    using Error::Error;
};

// A Weyl sample is singular where invertibility is required.
class NotInvertible : public Error {
public:
    using Error::Error;
};

// The spectral-line grid is too coarse for the requested spatial resolution.
class AliasingRisk : public Error {
public:
    using Error::Error;
};

// Discretized integral operator lost positivity / a dense solve failed.
class SingularOperator : public Error {
public:
    using Error::Error;
};

// Spectral gaps too small for the commutator inversion to be well conditioned.
class ConditioningError : public Error {
public:
    using Error::Error;
};

// Darboux seed data violates the defining operator identity or positivity.
class InvalidDarbouxData : public Error {
public:
    using Error::Error;
};

// S(x) lost positive definiteness along a Darboux trajectory.
class PositivityLoss : public Error {
public:
    using Error::Error;
};

// Resolvent requested at (or numerically at) an eigenvalue of A.
class ResolventSingularity : public Error {
public:
    using Error::Error;
};

// Ray samples fall outside the common analyticity domain of both inputs.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace nwave
