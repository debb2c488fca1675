#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qwalk/thermo.hpp"

namespace qwalk {

/// Outcome of scanning t = 1..t_max for the last time a convergence
/// criterion is violated.
struct ConvergenceReport {
  double epsilon = 0.0;
  std::int64_t tau = 1;             // last_violation + 1
  std::int64_t t_max = 0;
  std::int64_t last_violation = 0;  // 0 when no t in [1, t_max] violates
  double c_constant = 0.0;          // 2 cosh^2(beta(inf) E0)
  bool satisfied = true;            // false if t_max itself violates
};

/// |Lambda+(rho1) - Lambda+(rho2)|.
double density_seminorm(const CoinDensity& rho1, const CoinDensity& rho2);

/// c = 2 cosh^2(beta E0), the slope linking Lambda+ and beta deviations.
double linearization_constant(double beta_infinity, double e0);

using DensitySource = std::function<CoinDensity(std::int64_t)>;

struct ConvergenceScan {
  double beta_infinity = 0.0;
  double c_constant = 0.0;
  std::vector<ConvergenceReport> mixing;          // one per mixing threshold
  std::vector<ConvergenceReport> thermalization;  // one per thermal threshold
};

/// Single pass over t = 1..t_max. `averaged(t)` is called with increasing t.
/// Mixing uses density_seminorm(rho(t), limit) > eps as a violation;
/// thermalization uses E0 |beta(t) - beta(inf)| > eps.
ConvergenceScan scan_convergence(const DensitySource& averaged, const CoinDensity& limit,
                                 double e0, std::span<const double> mixing_eps,
                                 std::span<const double> thermal_eps, std::int64_t t_max);

/// Same, for the localized walk of `params`, with averages from the closed form.
ConvergenceScan scan_convergence(const WalkParams& params, std::span<const double> mixing_eps,
                                 std::span<const double> thermal_eps, std::int64_t t_max);

ConvergenceReport mixing_time(const WalkParams& params, double epsilon,
                              std::int64_t t_max = kDefaultMaxSteps);

/// Throws DomainError when the asymptotic coin is pure (beta(inf) infinite).
ConvergenceReport thermalization_time(const WalkParams& params, double epsilon,
                                      std::int64_t t_max = kDefaultMaxSteps);

/// Lambda+ and beta deviations from their limits for t = 1..t_max.
struct DeviationSeries {
  std::vector<double> lambda_plus;  // Lambda+(t) - Lambda+(inf)
  std::vector<double> beta;         // beta(t) - beta(inf)
  double c_constant = 0.0;
};

DeviationSeries deviation_series(const WalkParams& params, std::int64_t t_max);

}  // namespace qwalk
