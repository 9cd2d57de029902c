#pragma once

#include <stdexcept>

namespace swan {

// Base class for failures of the model itself, as opposed to plain argument
// misuse which throws std::invalid_argument / std::domain_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Antenna position vector violates segment containment or minimum spacing.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// A user coincides with an antenna, making the path loss undefined.
class SingularGeometryError : public Error {
 public:
  using Error::Error;
};

// Effective receive vector is numerically zero; the SINR ratio is undefined.
class DegenerateReceiverError : public Error {
 public:
  using Error::Error;
};

// Zero-forcing requires an effective channel of full column rank.
class ZfInfeasibleError : public Error {
 public:
  using Error::Error;
};

// Requested an algorithm variant that is deliberately not provided.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

// Partially-connected topology parameters are inconsistent.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Retraction hit a zero-modulus entry and cannot normalize it.
class DegenerateRetractionError : public Error {
 public:
  using Error::Error;
};

// Closed-form expression is undefined for the requested geometry (for
// example, centered placement needs an odd segment count).
class UnsupportedGeometryError : public Error {
 public:
  using Error::Error;
};

// Non-finite value or singular linear system inside a solver.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace swan
