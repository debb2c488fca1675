#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/params.hpp"

namespace qwalk {

using cplx = std::complex<double>;

/// Spinor of the walker on the N-cycle: left-chirality amplitudes a_k and
/// right-chirality amplitudes b_k for sites k = 0..N-1, plus the number of
/// steps taken to reach it.
class WalkState {
 public:
  WalkState(std::vector<cplx> left, std::vector<cplx> right, std::int64_t time = 0);

  /// All-zero state on n sites. Not normalized; fill it before use.
  static WalkState zeros(std::int64_t n_sites, std::int64_t time = 0);

  std::int64_t n_sites() const { return static_cast<std::int64_t>(left_.size()); }
  std::int64_t time() const { return time_; }

  std::span<const cplx> left() const { return left_; }
  std::span<const cplx> right() const { return right_; }
  std::span<cplx> left() { return left_; }
  std::span<cplx> right() { return right_; }

  double norm_squared() const;

 private:
  friend void step_into(const WalkState& state, double theta, WalkState& out);

  std::vector<cplx> left_;
  std::vector<cplx> right_;
  std::int64_t time_;
};

/// Walker at site 0 with chirality cos(gamma/2)|L> + e^{i phi} sin(gamma/2)|R>.
WalkState localized_initial_state(const WalkParams& params);

/// One application of the coined-walk map on the cycle:
///   a_k' = a_{k+1} cos(theta) + b_{k+1} sin(theta)
///   b_k' = a_{k-1} sin(theta) - b_{k-1} cos(theta)
/// with indices taken modulo N.
WalkState step(const WalkState& state, double theta);

/// Writes step(state) into `out`, which must have the same number of sites.
void step_into(const WalkState& state, double theta, WalkState& out);

/// `steps` applications of step(). Throws DomainError if steps < 0 or
/// steps > max_steps.
WalkState evolve(const WalkState& state, double theta, std::int64_t steps,
                 std::int64_t max_steps = kDefaultMaxSteps);

}  // namespace qwalk
