#pragma once

#include <stdexcept>
#include <string>

namespace quench {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid model or operator parameters (alpha, rho, H, ...).
class ParameterError : public Error { using Error::Error; };
class GridError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
// Source term evaluated at or past the singular level u = 1.
class SingularityError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class SpectralError : public Error { using Error::Error; };
// Every realization in an ensemble failed.
class EnsembleError : public Error { using Error::Error; };
// A bound was requested outside the regime where it is valid.
class ConditionError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

}  // namespace quench
