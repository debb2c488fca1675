#include "qwalk/walk.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qwalk/errors.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk {

namespace {

// c^2 + s^2 - 1 evaluated without rounding error at the 1e-16 level.
double unit_residual(double c, double s) {
  const double cc = c * c, ss = s * s;
  const double cc_err = std::fma(c, c, -cc), ss_err = std::fma(s, s, -ss);
  const double sum = cc + ss;
  const double sum_err = (cc - (sum - (sum - cc))) + (ss - (sum - cc));
  return (sum - 1.0) + (sum_err + cc_err + ss_err);
}

// cos and sin of theta, nudged by a few ulps so that c^2 + s^2 is as close
// to 1 as doubles allow. The rounded pair otherwise carries a systematic
// norm drift of up to 2e-16 per step.
std::pair<double, double> coin_entries(double theta) {
  thread_local double cached_theta = std::nan("");
  thread_local std::pair<double, double> cached{1.0, 0.0};
  if (theta == cached_theta) return cached;

  const double c0 = std::cos(theta), s0 = std::sin(theta);
  std::pair<double, double> best{c0, s0};
  double best_res = std::abs(unit_residual(c0, s0));
  double ci = c0;
  for (int i = 0; i < 4; ++i) ci = std::nextafter(ci, -1.0);
  for (int i = -4; i <= 4; ++i, ci = std::nextafter(ci, 2.0)) {
    double si = s0;
    for (int j = 0; j < 4; ++j) si = std::nextafter(si, -1.0);
    for (int j = -4; j <= 4; ++j, si = std::nextafter(si, 2.0)) {
      if (ci < 0.0 || si < 0.0 || ci > 1.0 || si > 1.0) continue;
      const double r = std::abs(unit_residual(ci, si));
      if (r < best_res) {
        best_res = r;
        best = {ci, si};
      }
    }
  }
  cached_theta = theta;
  cached = best;
  return best;
}

}  // namespace

WalkState::WalkState(std::vector<cplx> left, std::vector<cplx> right, std::int64_t time)
    : left_(std::move(left)), right_(std::move(right)), time_(time) {
  if (left_.size() != right_.size()) {
    throw DomainError("left and right amplitude vectors differ in length");
  }
  if (left_.size() < 3) {
    throw DomainError("a cycle needs at least 3 sites, got " + std::to_string(left_.size()));
  }
  if (time_ < 0) throw DomainError("state time must be non-negative");
}

WalkState WalkState::zeros(std::int64_t n_sites, std::int64_t time) {
  if (n_sites < 3) throw DomainError("n_sites must be >= 3, got " + std::to_string(n_sites));
  const auto n = static_cast<std::size_t>(n_sites);
  return WalkState(std::vector<cplx>(n), std::vector<cplx>(n), time);
}

double WalkState::norm_squared() const {
  const auto s = simd::active().coin_sums(left_.data(), right_.data(), left_.size());
  return s.p_left + s.p_right;
}

WalkState localized_initial_state(const WalkParams& params) {
  params.validate();
  WalkState s = WalkState::zeros(params.n_sites);
  s.left()[0] = std::cos(params.gamma / 2);
  s.right()[0] = std::polar(std::sin(params.gamma / 2), params.phi);
  return s;
}

void step_into(const WalkState& state, double theta, WalkState& out) {
  validate_theta(theta);
  const auto n = static_cast<std::size_t>(state.n_sites());
  if (out.n_sites() != state.n_sites()) {
    throw DomainError("step_into: output state has the wrong number of sites");
  }
  const auto [c, s] = coin_entries(theta);
  const auto& k = simd::active();

  const auto* a = reinterpret_cast<const double*>(state.left().data());
  const auto* b = reinterpret_cast<const double*>(state.right().data());
  auto* a_out = reinterpret_cast<double*>(out.left().data());
  auto* b_out = reinterpret_cast<double*>(out.right().data());

  // a'_k <- site k+1: a contiguous run for k = 0..N-2, then the seam.
  k.axpby(a_out, a + 2, b + 2, c, s, 2 * (n - 1));
  k.axpby(a_out + 2 * (n - 1), a, b, c, s, 2);
  // b'_k <- site k-1: the seam first, then k = 1..N-1.
  k.axpby(b_out, a + 2 * (n - 1), b + 2 * (n - 1), s, -c, 2);
  k.axpby(b_out + 2, a, b, s, -c, 2 * (n - 1));

  out.time_ = state.time() + 1;
}

WalkState step(const WalkState& state, double theta) {
  WalkState out = WalkState::zeros(state.n_sites());
  step_into(state, theta, out);
  return out;
}

WalkState evolve(const WalkState& state, double theta, std::int64_t steps,
                 std::int64_t max_steps) {
  if (steps < 0) throw DomainError("evolve: steps must be non-negative");
  if (steps > max_steps) {
    throw DomainError("evolve: " + std::to_string(steps) + " steps exceeds the limit of " +
                      std::to_string(max_steps));
  }
  validate_theta(theta);
  WalkState cur = state;
  WalkState next = WalkState::zeros(state.n_sites());
  for (std::int64_t i = 0; i < steps; ++i) {
    step_into(cur, theta, next);
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace qwalk
