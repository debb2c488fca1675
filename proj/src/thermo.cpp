#include "qwalk/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk {

namespace {

constexpr double kChiTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Incremental phases in the series are recomputed from scratch this often.
constexpr std::int64_t kResyncInterval = 1024;

void require_interior_theta(double theta, const char* what) {
  validate_theta(theta);
  if (theta <= 0.0 || theta >= kPi / 2) {
    throw DomainError(std::string(what) + " requires theta in (0, pi/2), got " +
                      std::to_string(theta));
  }
}

cplx reduced_phase(double angle, std::int64_t t) {
  const long double ph = static_cast<long double>(angle) * static_cast<long double>(t);
  return std::polar(1.0, static_cast<double>(std::remainder(ph, 2 * static_cast<long double>(kPi))));
}

}  // namespace

std::pair<double, double> coin_eigenvalues(const CoinDensity& rho) {
  const double mean = 0.5 * rho.trace();
  const double half_gap = std::sqrt(std::max(0.0, mean * mean - rho.determinant()));
  return {mean + half_gap, mean - half_gap};
}

CoinDensity coin_density(const WalkState& state) {
  const auto s = simd::active().coin_sums(state.left().data(), state.right().data(),
                                          static_cast<std::size_t>(state.n_sites()));
  return {s.p_left, s.p_right, s.q};
}

double entanglement_entropy(const CoinDensity& rho) {
  const auto [lp, lm] = coin_eigenvalues(rho);
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(lp) + term(lm);
}

CoinDensity averaged_density_numeric(const WalkState& initial, double theta, std::int64_t t) {
  if (t < 1) throw UndefinedAverageError("time average needs t >= 1, got " + std::to_string(t));
  if (t > kDefaultMaxSteps) {
    throw DomainError("averaged_density_numeric: t exceeds the step limit");
  }
  validate_theta(theta);
  WalkState cur = initial;
  WalkState next = WalkState::zeros(initial.n_sites());
  double pl = 0.0, pr = 0.0;
  cplx q{};
  for (std::int64_t i = 0; i < t; ++i) {
    const CoinDensity rho = coin_density(cur);
    pl += rho.p_left;
    pr += rho.p_right;
    q += rho.q;
    if (i + 1 < t) {
      step_into(cur, theta, next);
      std::swap(cur, next);
    }
  }
  const double inv = 1.0 / static_cast<double>(t);
  return {pl * inv, pr * inv, q * inv};
}

CoinDensity averaged_density_numeric(const WalkParams& params, std::int64_t t) {
  return averaged_density_numeric(localized_initial_state(params), params.theta, t);
}

CoinDensity asymptotic_density(const SpectralDecomposition& d) {
  CoinDensity rho{0.0, 0.0, {}};
  for (std::size_t k = 0; k < d.omega.size(); ++k) {
    rho.p_left += std::norm(d.alpha_left[k]) + std::norm(d.beta_left[k]);
    rho.p_right += std::norm(d.alpha_right[k]) + std::norm(d.beta_right[k]);
    rho.q += std::conj(d.alpha_right[k]) * d.alpha_left[k] +
             std::conj(d.beta_right[k]) * d.beta_left[k];
  }
  return rho;
}

CoinDensity asymptotic_density_two_step(const WalkState& initial, double theta) {
  validate_theta(theta);
  check_nondegenerate(initial.n_sites(), theta);
  const ModeAmplitudes c0 = fourier_coefficients(initial);
  const ModeAmplitudes c1 = fourier_coefficients(step(initial, theta));
  const std::vector<double> omega = mode_phases(initial.n_sites(), theta);
  const cplx i_unit{0.0, 1.0};

  CoinDensity rho{0.0, 0.0, {}};
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const double s = std::sin(omega[k]);
    const double c2 = 2 * std::cos(omega[k]) * std::cos(omega[k]);
    const cplx zl = c1.left[k] * std::conj(c0.left[k]);
    const cplx zr = c1.right[k] * std::conj(c0.right[k]);
    rho.p_left += (std::norm(c1.left[k]) + std::norm(c0.left[k]) +
                   (i_unit * s * (zl - std::conj(zl))).real()) / c2;
    rho.p_right += (std::norm(c1.right[k]) + std::norm(c0.right[k]) +
                    (i_unit * s * (zr - std::conj(zr))).real()) / c2;
    rho.q += (c0.left[k] * std::conj(c0.right[k]) + c1.left[k] * std::conj(c1.right[k]) +
              i_unit * s *
                  (c1.left[k] * std::conj(c0.right[k]) - c0.left[k] * std::conj(c1.right[k]))) /
             c2;
  }
  return rho;
}

AveragedDensitySeries::AveragedDensitySeries(const SpectralDecomposition& d)
    : asymptotic_(asymptotic_density(d)) {
  const std::size_t n = d.omega.size();
  angle_.resize(n);
  u_.resize(n);
  v_.resize(n);
  w_.resize(n);
  step_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx denom = 1.0 + std::polar(1.0, 2 * d.omega[k]);
    if (std::abs(denom) < 1e-12) {
      throw DegenerateSpectrumError("mode k=" + std::to_string(k) +
                                    " has 1 + e^{2i Omega_k} = 0; closed-form average is singular");
    }
    angle_[k] = std::remainder(2 * d.omega[k] + kPi, 2 * kPi);
    u_[k] = d.alpha_left[k] * std::conj(d.beta_left[k]) / denom;
    v_[k] = d.alpha_left[k] * std::conj(d.beta_right[k]) / denom;
    w_[k] = d.beta_left[k] * std::conj(d.alpha_right[k]) / std::conj(denom);
    step_[k] = std::polar(1.0, angle_[k]);
  }
  phase_.assign(n, cplx{1.0, 0.0});
}

CoinDensity AveragedDensitySeries::assemble(std::int64_t t, const std::vector<cplx>& phase) const {
  const auto corr = simd::active().average_correction(u_.data(), v_.data(), w_.data(),
                                                      phase.data(), phase.size());
  const double scale = 2.0 / static_cast<double>(t);
  return {asymptotic_.p_left + scale * corr.xi, asymptotic_.p_right - scale * corr.xi,
          asymptotic_.q + scale * corr.varsigma};
}

CoinDensity AveragedDensitySeries::at(std::int64_t t) const {
  if (t < 1) throw UndefinedAverageError("time average needs t >= 1, got " + std::to_string(t));
  std::vector<cplx> phase(angle_.size());
  for (std::size_t k = 0; k < angle_.size(); ++k) phase[k] = reduced_phase(angle_[k], t);
  return assemble(t, phase);
}

void AveragedDensitySeries::resync(std::int64_t t) {
  for (std::size_t k = 0; k < angle_.size(); ++k) phase_[k] = reduced_phase(angle_[k], t);
}

CoinDensity AveragedDensitySeries::next() {
  ++time_;
  if (time_ % kResyncInterval == 0) {
    resync(time_);
  } else {
    simd::active().rotate(phase_.data(), step_.data(), phase_.size());
  }
  return assemble(time_, phase_);
}

CoinDensity averaged_density_closed(const SpectralDecomposition& decomp, std::int64_t t) {
  return AveragedDensitySeries(decomp).at(t);
}

double f_sum(std::int64_t n_sites, double theta) {
  if (n_sites < 3) throw DomainError("f(N, theta) needs N >= 3");
  validate_theta(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  double acc = 0.0;
  for (std::int64_t k = 0; k < n_sites; ++k) {
    const double s = std::sin(2 * kPi * static_cast<double>(k) / static_cast<double>(n_sites));
    const double denom = 1.0 - c2 * s * s;
    if (std::abs(denom) < 1e-14) {
      throw DegenerateSpectrumError("f(N, theta) has a singular term at k=" + std::to_string(k));
    }
    acc += 1.0 / denom;
  }
  return acc / static_cast<double>(n_sites);
}

double f_hadamard_closed(std::int64_t n_sites) {
  if (n_sites < 3) throw DomainError("f(N, pi/4) needs N >= 3");
  const std::int64_t m = (n_sites % 2 == 0) ? n_sites / 2 : n_sites;
  // [(1+r2)^m + (1-r2)^m] / [(1+r2)^m - (1-r2)^m] rewritten with the ratio
  // (1-r2)/(1+r2), |ratio| < 1, so large N does not overflow.
  const double r2 = std::sqrt(2.0);
  const double rm = std::pow((1.0 - r2) / (1.0 + r2), static_cast<double>(m));
  return r2 * (1.0 + rm) / (1.0 - rm);
}

FGH f_g_h(std::int64_t n_sites, double theta) {
  validate_theta(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  if (c2 < 1e-15) throw DomainError("g and h are undefined at theta = pi/2");
  const double f = f_sum(n_sites, theta);
  return {f, (f - 1.0) / c2, 2.0 / c2 + (1.0 - 2.0 / c2) * f};
}

CoinDensity asymptotic_density_localized(const WalkParams& params) {
  params.validate();
  require_interior_theta(params.theta, "asymptotic_density_localized");
  const auto [f, g, h] = f_g_h(params.n_sites, params.theta);
  const double th = params.theta;
  const double ga = params.gamma;
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const double sin2th = std::sin(2 * th);
  const double sg = std::sin(ga);
  const double cg = std::cos(ga);
  const double cphi = std::cos(params.phi);
  const double half_sin = std::sin(ga / 2);

  const double p_right = (0.5 - 0.5 * c2 * cg - 0.25 * sg * sin2th * cphi) * f +
                         (0.25 * sg * sin2th * cphi - c2 * half_sin * half_sin) * g;
  const cplx q = 0.25 * (std::polar(sg * s2, -params.phi) + 0.5 * cg * sin2th) * f +
                 0.25 * (std::polar(sg * s2, params.phi) + 0.5 * cg * sin2th) * h;
  return {1.0 - p_right, p_right, q};
}

double chi_of_density(const CoinDensity& rho) {
  const double chi = 0.25 - rho.determinant();
  if (chi < -kChiTol || chi > 0.25 + kChiTol || !std::isfinite(chi)) {
    throw InvalidDensityError("coin matrix is not a density matrix: chi = " + std::to_string(chi));
  }
  return std::clamp(chi, 0.0, 0.25);
}

double chi_isotherm(const WalkParams& params) {
  params.validate();
  require_interior_theta(params.theta, "chi_isotherm");
  const auto [f, g, h] = f_g_h(params.n_sites, params.theta);
  (void)g;
  const double st = std::sin(params.theta);
  const double ct = std::cos(params.theta);
  const double sg = std::sin(params.gamma);
  const double cg = std::cos(params.gamma);
  const double sp = std::sin(params.phi);
  const double cp = std::cos(params.phi);
  const double cross = cp * sg * st + cg * ct;
  return (h - f) * (h - f) * sp * sp * sg * sg * st * st * st * st / 16 +
         (h + f) * (h + f) * cross * cross / 16;
}

double characteristic_chi(std::int64_t n_sites, double theta) {
  require_interior_theta(theta, "characteristic_chi");
  const auto [f, g, h] = f_g_h(n_sites, theta);
  (void)g;
  const double ct = std::cos(theta);
  return (h + f) * (h + f) * ct * ct / 16;
}

double beta_from_chi(double chi, double e0) {
  validate_energy_scale(e0);
  if (!(chi >= -kChiTol && chi <= 0.25 + kChiTol)) {
    throw DomainError("chi must lie in [0, 1/4], got " + std::to_string(chi));
  }
  const double x = 2 * std::sqrt(std::clamp(chi, 0.0, 0.25));
  if (x >= 1.0) return kInf;
  return std::atanh(x) / e0;
}

double temperature_from_chi(double chi, double e0) {
  const double beta = beta_from_chi(chi, e0);
  if (beta == 0.0) return kInf;
  if (std::isinf(beta)) return 0.0;
  return 1.0 / beta;
}

double characteristic_temperature(std::int64_t n_sites, double theta, double e0) {
  return temperature_from_chi(characteristic_chi(n_sites, theta), e0);
}

ThermoState transient_temperature(const CoinDensity& rho_avg, double e0,
                                  TemperatureConvention convention) {
  ThermoState s;
  s.chi = chi_of_density(rho_avg);
  const double root = std::sqrt(s.chi);
  s.lambda_plus = 0.5 + root;
  s.lambda_minus = 0.5 - root;
  s.beta = beta_from_chi(s.chi, e0);
  if (convention == TemperatureConvention::kLiteralTransient) s.beta *= 2.0;
  if (s.beta == 0.0) {
    s.temperature = kInf;
  } else if (std::isinf(s.beta)) {
    s.temperature = 0.0;
  } else {
    s.temperature = 1.0 / s.beta;
  }
  return s;
}

}  // namespace qwalk
