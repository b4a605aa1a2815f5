// errors.hpp — Exception hierarchy shared by all thermoflux modules

#pragma once

#include <stdexcept>
#include <string>

namespace thermoflux {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Type invariant or precondition violated by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class DegenerateSteadyState : public SolverError {
public:
    using SolverError::SolverError;
};

class NonConvergent : public SolverError {
public:
    using SolverError::SolverError;
};

class CutoffExceeded : public SolverError {
public:
    using SolverError::SolverError;
};

// Two independent evaluation routes disagree.
class CrossCheckFailed : public Error {
public:
    using Error::Error;
};

// A closed-form or reduction formula is evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class NonLinearConfig : public DomainError {
public:
    using DomainError::DomainError;
};

class NoCoupling : public DomainError {
public:
    using DomainError::DomainError;
};

class NoPositiveRoot : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroFrequency : public DomainError {
public:
    using DomainError::DomainError;
};

class ResonantFrequencies : public DomainError {
public:
    using DomainError::DomainError;
};

class NegativeRate : public DomainError {
public:
    using DomainError::DomainError;
};

class InvertedRates : public DomainError {
public:
    using DomainError::DomainError;
};

class DimensionTooLarge : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace thermoflux
