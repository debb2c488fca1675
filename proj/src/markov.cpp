#include "qwalk/markov.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// |cos 2 theta| below this is the Hadamard coin: one step equilibrates.
constexpr double kHadamardTol = 1e-12;

double pow_int(double base, std::int64_t t) { return std::pow(base, static_cast<double>(t)); }

}  // namespace

void MarkovState::validate() const {
  if (!(p_left >= 0.0 && p_left <= 1.0 && p_right >= 0.0 && p_right <= 1.0)) {
    throw DomainError("Markov probabilities must lie in [0, 1]");
  }
  if (std::abs(p_left + p_right - 1.0) > 1e-14) {
    throw DomainError("Markov probabilities must sum to 1, got " +
                      std::to_string(p_left + p_right));
  }
  if (time < 0) throw DomainError("Markov state time must be non-negative");
}

// Both routines apply [[cos^2, sin^2], [sin^2, cos^2]] written in terms of
// the total and the difference of the two probabilities; the difference
// picks up a factor cos(2 theta) per step.
MarkovState markov_step(const MarkovState& s, double theta) {
  s.validate();
  validate_theta(theta);
  if (theta == 0.0) return {s.p_left, s.p_right, s.time + 1};
  const double total = s.p_left + s.p_right;
  const double diff = std::cos(2 * theta) * (s.p_left - s.p_right);
  return {0.5 * (total + diff), 0.5 * (total - diff), s.time + 1};
}

MarkovState markov_solution(const MarkovState& initial, double theta, std::int64_t t) {
  validate_theta(theta);
  if (t < 0) throw DomainError("markov_solution: t must be non-negative");
  initial.validate();
  if (theta == 0.0 || t == 0) return {initial.p_left, initial.p_right, initial.time + t};
  const double total = initial.p_left + initial.p_right;
  const double diff = pow_int(std::cos(2 * theta), t) * (initial.p_left - initial.p_right);
  return {0.5 * (total + diff), 0.5 * (total - diff), initial.time + t};
}

double markov_beta(const MarkovState& initial, double theta, std::int64_t t, double e0) {
  validate_theta(theta);
  validate_energy_scale(e0);
  if (t < 0) throw DomainError("markov_beta: t must be non-negative");
  const double x = pow_int(std::cos(2 * theta), t) * (initial.p_left - initial.p_right);
  if (std::abs(x) >= 1.0) {
    throw InfiniteBetaError("classical chirality is pure at t=" + std::to_string(t) +
                            "; beta_m is infinite");
  }
  return std::log((1 + x) / (1 - x)) / (2 * e0);
}

MarkovThermalization markov_thermalization_time(const MarkovState& initial, double theta,
                                                double epsilon, double e0, std::int64_t t_max) {
  initial.validate();
  validate_theta(theta);
  validate_energy_scale(e0);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double dp0 = initial.p_left - initial.p_right;
  if (dp0 == 0.0) {
    throw DomainError("initial distribution is already uniform; thermalization time is undefined");
  }
  const double c = std::cos(2 * theta);
  if (theta == 0.0) {
    throw NonThermalizingError("theta = 0: chirality probabilities are constant and never equilibrate");
  }
  if (theta == kPi / 2 || std::abs(std::abs(c) - 1.0) < 1e-15) {
    throw NonThermalizingError("theta = pi/2: chirality flip-flops without converging");
  }
  if (std::abs(c) < kHadamardTol) return {1.0, 1};

  MarkovThermalization out;
  out.formula = (std::log(epsilon) - std::log(std::abs(dp0))) / std::log(std::abs(c));
  // |beta_m(t)| decreases monotonically, so the first satisfying t is tau.
  for (std::int64_t t = 1; t <= t_max; ++t) {
    if (e0 * std::abs(markov_beta(initial, theta, t, e0)) <= epsilon) {
      out.empirical = t;
      return out;
    }
  }
  throw NonThermalizingError("classical chain did not thermalize within t_max=" +
                             std::to_string(t_max));
}

}  // namespace qwalk
