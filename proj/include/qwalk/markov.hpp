#pragma once

#include <cstdint>

#include "qwalk/params.hpp"

namespace qwalk {

/// Classical chirality distribution obtained by dropping the interference
/// term from the quantum master map.
struct MarkovState {
  double p_left = 1.0;
  double p_right = 0.0;
  std::int64_t time = 0;

  /// Throws DomainError unless both entries lie in [0, 1] and sum to 1.
  void validate() const;
};

/// Applies [[cos^2, sin^2], [sin^2, cos^2]].
MarkovState markov_step(const MarkovState& state, double theta);

/// Closed solution after t steps, via cos^t(2 theta).
MarkovState markov_solution(const MarkovState& initial, double theta, std::int64_t t);

/// beta_m(t) = (1 / 2E0) ln[(1 + x) / (1 - x)], x = cos^t(2 theta) (P_L(0) - P_R(0)).
/// Throws InfiniteBetaError when |x| = 1.
double markov_beta(const MarkovState& initial, double theta, std::int64_t t, double e0);

struct MarkovThermalization {
  double formula = 0.0;        // (ln eps - ln|dP0|) / ln|cos 2 theta|
  std::int64_t empirical = 0;  // first t >= 1 with E0 |beta_m(t)| <= eps
};

/// Classical thermalization time. There is no cycle-size argument: the
/// chain does not depend on N.
///
/// theta = 0 or pi/2 throw NonThermalizingError; theta = pi/4 reports 1 for
/// both values; P_L(0) = P_R(0) throws DomainError.
MarkovThermalization markov_thermalization_time(const MarkovState& initial, double theta,
                                                double epsilon, double e0 = 1.0,
                                                std::int64_t t_max = kDefaultMaxSteps);

}  // namespace qwalk
