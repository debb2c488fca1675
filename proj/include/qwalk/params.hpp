#pragma once

#include <cstdint>
#include <numbers>

namespace qwalk {

inline constexpr double kPi = std::numbers::pi;

// Upper bound on the number of steps any single run may take.
inline constexpr std::int64_t kDefaultMaxSteps = 1'000'000;

/// Parameters of a coined walk on the N-cycle.
///
/// `theta` is the coin bias (pi/4 is the Hadamard coin). `gamma` and `phi`
/// place the initial chirality on the Bloch sphere for a walker started at
/// site 0. `energy_scale` is the level splitting E_0 used to turn coin
/// eigenvalues into temperatures.
struct WalkParams {
  std::int64_t n_sites = 3;
  double theta = kPi / 4;
  double gamma = 0.0;
  double phi = 0.0;
  double energy_scale = 1.0;

  /// Throws DomainError naming the first offending field.
  void validate() const;
};

/// Maps any angle onto [0, 2pi).
double wrap_phase(double phi);

void validate_theta(double theta);
void validate_energy_scale(double e0);

}  // namespace qwalk
