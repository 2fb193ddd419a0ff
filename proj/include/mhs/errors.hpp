#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhs {

// Base for every mathematical failure the evaluators can raise. Usage errors
// (bad arguments outside an operation's domain) use std::invalid_argument.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInvertible : public MathError {
public:
    NotInvertible(std::string what, std::vector<std::int64_t> obstructing_primes)
        : MathError(std::move(what)), primes_(std::move(obstructing_primes)) {}

    // Primes dividing both the offending denominator and the modulus.
    const std::vector<std::int64_t>& primes() const noexcept { return primes_; }

private:
    std::vector<std::int64_t> primes_;
};

class NonInvertibleTerm : public MathError {
public:
    NonInvertibleTerm(std::int64_t index, std::int64_t modulus);
    std::int64_t index() const noexcept { return index_; }

private:
    std::int64_t index_;
};

class NonCoprimeModuli : public MathError {
public:
    using MathError::MathError;
};

class NonCoprimeResidue : public MathError {
public:
    using MathError::MathError;
};

class DegenerateDenominator : public MathError {
public:
    using MathError::MathError;
};

class LiftDivisibilityFailure : public MathError {
public:
    using MathError::MathError;
};

// A requested exact quantity is beyond the configured desk-scale limit.
class ResourceLimit : public MathError {
public:
    using MathError::MathError;
};

class ModulusMismatch : public MathError {
public:
    using MathError::MathError;
};

}  // namespace mhs
