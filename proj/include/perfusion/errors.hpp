#pragma once

#include <stdexcept>
#include <string>

namespace perfusion {

// Input/configuration problems. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures of the numerics themselves (exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

#define PERFUSION_VALIDATION_ERROR(NAME)                                            \
    class NAME : public ValidationError {                                           \
    public:                                                                         \
        explicit NAME(const std::string& msg) : ValidationError(#NAME ": " + msg) {} \
    }

PERFUSION_VALIDATION_ERROR(NonIntegerSubstep);
PERFUSION_VALIDATION_ERROR(GridOverrun);
PERFUSION_VALIDATION_ERROR(DomainError);
PERFUSION_VALIDATION_ERROR(IndexError);
PERFUSION_VALIDATION_ERROR(DimensionMismatch);
PERFUSION_VALIDATION_ERROR(NonpositiveDensity);
PERFUSION_VALIDATION_ERROR(NonpositiveParameter);
PERFUSION_VALIDATION_ERROR(NonpositiveVariance);
PERFUSION_VALIDATION_ERROR(InvalidParams);
PERFUSION_VALIDATION_ERROR(InvalidInterval);
PERFUSION_VALIDATION_ERROR(EmptySamples);

#undef PERFUSION_VALIDATION_ERROR

class NotFactorizable : public NumericalError {
public:
    explicit NotFactorizable(const std::string& msg) : NumericalError("NotFactorizable: " + msg) {}
};

} // namespace perfusion
