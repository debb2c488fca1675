#include "qwalk/times.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void check_scan_args(std::span<const double> eps_a, std::span<const double> eps_b,
                     std::int64_t t_max) {
  if (t_max < 1) throw DomainError("scan horizon t_max must be >= 1");
  for (auto list : {eps_a, eps_b}) {
    for (double e : list) {
      if (!(e > 0.0)) throw DomainError("epsilon must be positive, got " + std::to_string(e));
    }
  }
}

ConvergenceReport finish(double eps, std::int64_t last, std::int64_t t_max, double c) {
  return {eps, last + 1, t_max, last, c, last < t_max};
}

SpectralDecomposition localized_decomposition(const WalkParams& params) {
  params.validate();
  return decompose(localized_initial_state(params), params.theta);
}

}  // namespace

double density_seminorm(const CoinDensity& rho1, const CoinDensity& rho2) {
  return std::abs(coin_eigenvalues(rho1).first - coin_eigenvalues(rho2).first);
}

double linearization_constant(double beta_infinity, double e0) {
  const double ch = std::cosh(beta_infinity * e0);
  return 2 * ch * ch;
}

ConvergenceScan scan_convergence(const DensitySource& averaged, const CoinDensity& limit,
                                 double e0, std::span<const double> mixing_eps,
                                 std::span<const double> thermal_eps, std::int64_t t_max) {
  validate_energy_scale(e0);
  check_scan_args(mixing_eps, thermal_eps, t_max);

  ConvergenceScan out;
  const double chi_inf = chi_of_density(limit);
  out.beta_infinity = beta_from_chi(chi_inf, e0);
  out.c_constant = linearization_constant(out.beta_infinity, e0);
  if (!thermal_eps.empty() && std::isinf(out.beta_infinity)) {
    throw DomainError("thermalization time is undefined for a pure asymptotic coin (beta = inf)");
  }
  const double lambda_inf = 0.5 + std::sqrt(chi_inf);

  std::vector<std::int64_t> last_mix(mixing_eps.size(), 0);
  std::vector<std::int64_t> last_th(thermal_eps.size(), 0);
  for (std::int64_t t = 1; t <= t_max; ++t) {
    const CoinDensity rho = averaged(t);
    const double chi = chi_of_density(rho);
    const double d_lambda = std::abs(0.5 + std::sqrt(chi) - lambda_inf);
    for (std::size_t i = 0; i < mixing_eps.size(); ++i) {
      if (d_lambda > mixing_eps[i]) last_mix[i] = t;
    }
    if (!thermal_eps.empty()) {
      const double d_beta = e0 * std::abs(beta_from_chi(chi, e0) - out.beta_infinity);
      for (std::size_t i = 0; i < thermal_eps.size(); ++i) {
        if (!(d_beta <= thermal_eps[i])) last_th[i] = t;
      }
    }
  }
  for (std::size_t i = 0; i < mixing_eps.size(); ++i) {
    out.mixing.push_back(finish(mixing_eps[i], last_mix[i], t_max, out.c_constant));
  }
  for (std::size_t i = 0; i < thermal_eps.size(); ++i) {
    out.thermalization.push_back(finish(thermal_eps[i], last_th[i], t_max, out.c_constant));
  }
  return out;
}

ConvergenceScan scan_convergence(const WalkParams& params, std::span<const double> mixing_eps,
                                 std::span<const double> thermal_eps, std::int64_t t_max) {
  AveragedDensitySeries series(localized_decomposition(params));
  const CoinDensity limit = series.asymptotic();
  return scan_convergence([&series](std::int64_t) { return series.next(); }, limit,
                          params.energy_scale, mixing_eps, thermal_eps, t_max);
}

ConvergenceReport mixing_time(const WalkParams& params, double epsilon, std::int64_t t_max) {
  const double eps[] = {epsilon};
  return scan_convergence(params, eps, {}, t_max).mixing.front();
}

ConvergenceReport thermalization_time(const WalkParams& params, double epsilon,
                                      std::int64_t t_max) {
  const double eps[] = {epsilon};
  return scan_convergence(params, {}, eps, t_max).thermalization.front();
}

DeviationSeries deviation_series(const WalkParams& params, std::int64_t t_max) {
  if (t_max < 1) throw DomainError("deviation_series: t_max must be >= 1");
  AveragedDensitySeries series(localized_decomposition(params));
  const double e0 = params.energy_scale;
  const double chi_inf = chi_of_density(series.asymptotic());
  const double beta_inf = beta_from_chi(chi_inf, e0);
  const double lambda_inf = 0.5 + std::sqrt(chi_inf);

  DeviationSeries out;
  out.c_constant = linearization_constant(beta_inf, e0);
  out.lambda_plus.reserve(static_cast<std::size_t>(t_max));
  out.beta.reserve(static_cast<std::size_t>(t_max));
  for (std::int64_t t = 1; t <= t_max; ++t) {
    const double chi = chi_of_density(series.next());
    out.lambda_plus.push_back(0.5 + std::sqrt(chi) - lambda_inf);
    out.beta.push_back(beta_from_chi(chi, e0) - beta_inf);
  }
  return out;
}

}  // namespace qwalk
