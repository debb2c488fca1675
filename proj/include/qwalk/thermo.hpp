#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwalk/spectral.hpp"

namespace qwalk {

/// Reduced density matrix of the coin, [[p_left, q], [conj(q), p_right]].
///
/// The same type holds the instantaneous matrix, its running time average
/// and the limit of that average.
struct CoinDensity {
  double p_left = 1.0;
  double p_right = 0.0;
  cplx q{};

  double trace() const { return p_left + p_right; }
  double determinant() const { return p_left * p_right - std::norm(q); }
};

/// Eigenvalues (larger first) of a coin density.
std::pair<double, double> coin_eigenvalues(const CoinDensity& rho);

/// Coin eigenvalues read as Gibbs weights of a two-level system with levels +-E0.
struct ThermoState {
  double lambda_plus = 1.0;
  double lambda_minus = 0.0;
  double chi = 0.25;
  // Inverse temperature in units of 1/E0-energy. 0 is infinite temperature;
  // +inf is a pure coin.
  double beta = 0.0;
  double temperature = 0.0;
};

CoinDensity coin_density(const WalkState& state);

/// Von Neumann entropy of the coin, with 0 ln 0 = 0.
double entanglement_entropy(const CoinDensity& rho);

/// Mean of coin_density over steps 0..t-1 of the walk from `initial`,
/// computed by direct iteration. Throws UndefinedAverageError for t < 1.
CoinDensity averaged_density_numeric(const WalkState& initial, double theta, std::int64_t t);

/// Same, starting from the localized state of `params`.
CoinDensity averaged_density_numeric(const WalkParams& params, std::int64_t t);

/// Limit of the time-averaged coin density, from the mode coefficients:
///   Pi_L = sum |alpha^L|^2 + |beta^L|^2,  Pi_R likewise,
///   Q_0  = sum conj(alpha^R) alpha^L + conj(beta^R) beta^L.
CoinDensity asymptotic_density(const SpectralDecomposition& decomp);

/// The same limit written directly in terms of the mode amplitudes at t = 0
/// and t = 1. Computes both from `initial` without going through alpha/beta.
CoinDensity asymptotic_density_two_step(const WalkState& initial, double theta);

/// Time-averaged coin density in closed form,
///   rho(t) = rho(inf) + (2/t) [[xi, varsigma], [conj(varsigma), -xi]],
/// evaluated in O(N) per time.
///
/// at() evaluates any t directly. next() walks t = 1, 2, 3, ... using an
/// incremental phase update (resynchronized periodically) and is what the
/// convergence scans use.
class AveragedDensitySeries {
 public:
  explicit AveragedDensitySeries(const SpectralDecomposition& decomp);

  const CoinDensity& asymptotic() const { return asymptotic_; }

  CoinDensity at(std::int64_t t) const;

  /// Density at time() + 1; advances time().
  CoinDensity next();
  std::int64_t time() const { return time_; }

 private:
  CoinDensity assemble(std::int64_t t, const std::vector<cplx>& phase) const;
  void resync(std::int64_t t);

  CoinDensity asymptotic_;
  std::vector<double> angle_;  // 2 Omega_k + pi reduced to (-pi, pi]
  std::vector<cplx> u_;        // alpha^L conj(beta^L) / (1 + e^{2i Omega})
  std::vector<cplx> v_;        // alpha^L conj(beta^R) / (1 + e^{2i Omega})
  std::vector<cplx> w_;        // beta^L conj(alpha^R) / conj(1 + e^{2i Omega})
  std::vector<cplx> step_;     // e^{i angle_k}
  std::vector<cplx> phase_;    // e^{i angle_k t} at t = time_
  std::int64_t time_ = 0;
};

CoinDensity averaged_density_closed(const SpectralDecomposition& decomp, std::int64_t t);

struct FGH {
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
};

/// f(N, theta) = (1/N) sum_k 1 / (1 - cos^2(theta) sin^2(2 pi k / N)).
double f_sum(std::int64_t n_sites, double theta);

/// Closed form of f(N, pi/4) in powers of (1 +- sqrt 2).
double f_hadamard_closed(std::int64_t n_sites);

/// f, g = (f - 1)/cos^2 theta, h = 2/cos^2 theta + (1 - 2/cos^2 theta) f.
/// Throws DomainError at theta = pi/2 where g and h are undefined.
FGH f_g_h(std::int64_t n_sites, double theta);

/// Limiting coin density for the localized start, in terms of f, g, h.
/// Requires theta in (0, pi/2).
CoinDensity asymptotic_density_localized(const WalkParams& params);

/// chi = 1/4 - det(rho). Roundoff down to -1e-12 is clamped to 0; anything
/// outside [0, 1/4] beyond that throws InvalidDensityError.
double chi_of_density(const CoinDensity& rho);

/// Asymptotic chi as a closed function of the initial Bloch angles.
double chi_isotherm(const WalkParams& params);

/// chi at gamma = pi, which sets the characteristic temperature T_0.
double characteristic_chi(std::int64_t n_sites, double theta);

/// T = 2 E0 / ln((1 + 2 sqrt chi) / (1 - 2 sqrt chi)). Infinite at chi = 0,
/// zero at chi = 1/4. Throws DomainError for chi outside [0, 1/4].
double temperature_from_chi(double chi, double e0);

/// Inverse of temperature_from_chi: beta with tanh(beta E0) = 2 sqrt chi.
double beta_from_chi(double chi, double e0);

double characteristic_temperature(std::int64_t n_sites, double theta, double e0);

enum class TemperatureConvention {
  // tanh(beta E0) = Lambda+ - Lambda-; agrees with the asymptotic temperature.
  kCanonical,
  // T = E0 / ln(Lambda+ / Lambda-), half the canonical temperature.
  kLiteralTransient,
};

ThermoState transient_temperature(const CoinDensity& rho_avg, double e0,
                                  TemperatureConvention convention = TemperatureConvention::kCanonical);

}  // namespace qwalk
