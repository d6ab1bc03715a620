#pragma once

#include <stdexcept>
#include <string>

namespace crgauss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

// Parameter ranges, indices, dimensions.
class DomainError : public Error {
public:
    using Error::Error;
};

class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

class ImmersionFailure : public Error {
public:
    using Error::Error;
};

// Floating-layer failures: tolerance exceeded, eigen solver did not converge,
// sign conditions violated beyond tolerance.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Random sampling could not find enough admissible points.
class SamplingFailure : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace crgauss
