#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Parameter outside its documented domain (N < 3, angle out of range, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// cos(Omega_k) = 0 for some mode; the two-frequency solution is singular.
class DegenerateSpectrumError : public std::domain_error {
 public:
  explicit DegenerateSpectrumError(const std::string& what) : std::domain_error(what) {}
};

// A time average over zero terms was requested.
class UndefinedAverageError : public std::domain_error {
 public:
  explicit UndefinedAverageError(const std::string& what) : std::domain_error(what) {}
};

// 2x2 coin matrix that is not a density matrix beyond roundoff.
class InvalidDensityError : public std::domain_error {
 public:
  explicit InvalidDensityError(const std::string& what) : std::domain_error(what) {}
};

// The classical chirality chain never relaxes (theta = 0 or pi/2).
class NonThermalizingError : public std::domain_error {
 public:
  explicit NonThermalizingError(const std::string& what) : std::domain_error(what) {}
};

// Inverse temperature diverges (a pure chirality distribution).
class InfiniteBetaError : public std::domain_error {
 public:
  explicit InfiniteBetaError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qwalk
