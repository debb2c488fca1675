#include <algorithm>
#include <cmath>
#include <random>

#include "qwalk/experiments.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/simd/kernels.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/thermo.hpp"

namespace qwalk {

namespace {

double max_amp_diff(const WalkState& x, const WalkState& y) {
  double m = 0.0;
  for (std::int64_t k = 0; k < x.n_sites(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    m = std::max({m, std::abs(x.left()[i] - y.left()[i]), std::abs(x.right()[i] - y.right()[i])});
  }
  return m;
}

double density_diff(const CoinDensity& a, const CoinDensity& b) {
  return std::max({std::abs(a.p_left - b.p_left), std::abs(a.p_right - b.p_right),
                   std::abs(a.q - b.q)});
}

WalkState random_state(std::mt19937_64& rng, std::int64_t n) {
  std::normal_distribution<double> g;
  WalkState s = WalkState::zeros(n);
  for (std::int64_t k = 0; k < n; ++k) {
    s.left()[static_cast<std::size_t>(k)] = {g(rng), g(rng)};
    s.right()[static_cast<std::size_t>(k)] = {g(rng), g(rng)};
  }
  const double scale = 1.0 / std::sqrt(s.norm_squared());
  for (auto& a : s.left()) a *= scale;
  for (auto& b : s.right()) b *= scale;
  return s;
}

SelftestCheck check(std::string name, double err, double tol) {
  return {std::move(name), err, tol, err <= tol};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick_n(3, 16);
  std::uniform_real_distribution<double> pick_theta(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> pick_gamma(0.0, kPi);
  std::uniform_real_distribution<double> pick_phi(0.0, 2 * kPi);

  double spectral_err = 0.0, average_err = 0.0, localized_err = 0.0, two_step_err = 0.0;
  for (int trial = 0; trial < 24; ++trial) {
    const WalkParams p{pick_n(rng), pick_theta(rng), pick_gamma(rng), pick_phi(rng), 1.0};
    const WalkState s0 = trial % 2 ? localized_initial_state(p) : random_state(rng, p.n_sites);
    const SpectralDecomposition d = decompose(s0, p.theta);
    WalkState direct = s0;
    for (std::int64_t t = 0; t <= 200; ++t) {
      spectral_err = std::max(spectral_err, max_amp_diff(direct, amplitudes_at(d, t)));
      direct = step(direct, p.theta);
    }
    for (std::int64_t t : {1, 2, 7, 50, 120}) {
      average_err = std::max(average_err, density_diff(averaged_density_closed(d, t),
                                                       averaged_density_numeric(s0, p.theta, t)));
    }
    two_step_err = std::max(two_step_err, density_diff(asymptotic_density(d),
                                                       asymptotic_density_two_step(s0, p.theta)));
    const CoinDensity spectral_limit = asymptotic_density(decompose(localized_initial_state(p), p.theta));
    localized_err = std::max(localized_err,
                             density_diff(spectral_limit, asymptotic_density_localized(p)));
  }

  double kernel_err = 0.0;
  if (simd::cpu_supports(simd::Isa::kAvx2)) {
    const auto& ref = simd::scalar_kernels();
    const auto& vec = *simd::avx2_kernels();
    for (std::int64_t n : {3, 4, 7, 16, 33}) {
      const WalkState a = random_state(rng, n);
      const WalkState b = random_state(rng, n);
      const auto un = static_cast<std::size_t>(n);
      const auto sr = ref.coin_sums(a.left().data(), a.right().data(), un);
      const auto sv = vec.coin_sums(a.left().data(), a.right().data(), un);
      kernel_err = std::max({kernel_err, std::abs(sr.p_left - sv.p_left),
                             std::abs(sr.p_right - sv.p_right), std::abs(sr.q - sv.q)});
      kernel_err = std::max(kernel_err, std::abs(ref.dot(a.left().data(), b.left().data(), un) -
                                                 vec.dot(a.left().data(), b.left().data(), un)));
      const auto cr = ref.average_correction(a.left().data(), a.right().data(), b.left().data(),
                                             b.right().data(), un);
      const auto cv = vec.average_correction(a.left().data(), a.right().data(), b.left().data(),
                                             b.right().data(), un);
      kernel_err = std::max({kernel_err, std::abs(cr.xi - cv.xi), std::abs(cr.varsigma - cv.varsigma)});
    }
  }

  double markov_err = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const double theta = pick_theta(rng);
    const double pl = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    MarkovState it{pl, 1.0 - pl, 0};
    const MarkovState init = it;
    for (std::int64_t t = 0; t <= 1000; ++t) {
      const MarkovState closed = markov_solution(init, theta, t);
      markov_err = std::max({markov_err, std::abs(closed.p_left - it.p_left),
                             std::abs(closed.p_right - it.p_right)});
      it = markov_step(it, theta);
    }
  }

  return {
      check("spectral amplitudes vs direct iteration", spectral_err, 1e-10),
      check("closed-form vs numeric time average", average_err, 1e-10),
      check("alpha/beta vs two-step asymptotic density", two_step_err, 1e-12),
      check("localized closed form vs spectral asymptotics", localized_err, 1e-10),
      check("avx2 vs scalar kernels", kernel_err, 1e-12),
      check("Markov closed form vs iteration", markov_err, 1e-14),
  };
}

}  // namespace qwalk
