#include "qwalk/params.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

void validate_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2)) {
    throw DomainError("theta must lie in [0, pi/2], got " + fmt(theta));
  }
}

void validate_energy_scale(double e0) {
  if (!(e0 > 0.0) || !std::isfinite(e0)) {
    throw DomainError("energy scale E0 must be positive and finite, got " + fmt(e0));
  }
}

void WalkParams::validate() const {
  if (n_sites < 3) {
    throw DomainError("n_sites must be >= 3, got " + std::to_string(n_sites));
  }
  validate_theta(theta);
  if (!(gamma >= 0.0 && gamma <= kPi)) {
    throw DomainError("gamma must lie in [0, pi], got " + fmt(gamma));
  }
  if (!(phi >= 0.0 && phi < 2 * kPi)) {
    throw DomainError("phi must lie in [0, 2pi), got " + fmt(phi));
  }
  validate_energy_scale(energy_scale);
}

double wrap_phase(double phi) {
  double r = std::fmod(phi, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi.
  if (r >= 2 * kPi) r = 0.0;
  return r;
}

}  // namespace qwalk
