#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk {

namespace {

// Tolerance on |sin Omega_k| - 1 below which the mode counts as degenerate.
constexpr double kDegenerateTol = 1e-14;

std::vector<cplx> twiddles(std::size_t n, double sign) {
  std::vector<cplx> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    w[m] = std::polar(1.0, sign * 2 * kPi * static_cast<double>(m) / static_cast<double>(n));
  }
  return w;
}

// out_k = N^{-1/2} sum_l e^{sign 2 pi i k l / N} x_l, as explicit O(N^2) sums.
std::vector<cplx> dft(std::span<const cplx> x, double sign) {
  const std::size_t n = x.size();
  const auto w = twiddles(n, sign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto& kern = simd::active();
  std::vector<cplx> row(n);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < n; ++l) {
      row[l] = w[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = scale * kern.dot(row.data(), x.data(), n);
  }
  return out;
}

double sin_omega(std::int64_t n_sites, double theta, std::int64_t k) {
  return std::cos(theta) *
         std::sin(2 * kPi * static_cast<double>(k) / static_cast<double>(n_sites));
}

}  // namespace

std::vector<cplx> fourier_forward(std::span<const cplx> x) { return dft(x, -1.0); }

std::vector<cplx> fourier_inverse(std::span<const cplx> c) { return dft(c, +1.0); }

ModeAmplitudes fourier_coefficients(const WalkState& state) {
  return {fourier_forward(state.left()), fourier_forward(state.right())};
}

WalkState from_modes(const ModeAmplitudes& modes, std::int64_t time) {
  return WalkState(fourier_inverse(modes.left), fourier_inverse(modes.right), time);
}

std::vector<double> mode_phases(std::int64_t n_sites, double theta) {
  std::vector<double> omega(static_cast<std::size_t>(n_sites));
  for (std::int64_t k = 0; k < n_sites; ++k) {
    omega[static_cast<std::size_t>(k)] = std::asin(std::clamp(sin_omega(n_sites, theta, k), -1.0, 1.0));
  }
  return omega;
}

cplx recurrence_eigenvalue(std::int64_t n_sites, double theta, std::int64_t k) {
  return {0.0, 2 * sin_omega(n_sites, theta, k)};
}

void check_nondegenerate(std::int64_t n_sites, double theta) {
  for (std::int64_t k = 0; k < n_sites; ++k) {
    if (std::abs(std::abs(sin_omega(n_sites, theta, k)) - 1.0) < kDegenerateTol) {
      throw DegenerateSpectrumError(
          "mode k=" + std::to_string(k) + " has cos(Omega_k) = 0 for N=" +
          std::to_string(n_sites) + ", theta=" + std::to_string(theta) +
          "; use direct iteration for these parameters");
    }
  }
}

SpectralDecomposition decompose(const WalkState& initial, double theta) {
  validate_theta(theta);
  const std::int64_t n = initial.n_sites();
  check_nondegenerate(n, theta);

  const ModeAmplitudes c0 = fourier_coefficients(initial);
  const ModeAmplitudes c1 = fourier_coefficients(step(initial, theta));

  SpectralDecomposition d;
  d.n_sites = n;
  d.theta = theta;
  d.omega = mode_phases(n, theta);
  const auto un = static_cast<std::size_t>(n);
  d.alpha_left.resize(un);
  d.alpha_right.resize(un);
  d.beta_left.resize(un);
  d.beta_right.resize(un);
  for (std::size_t k = 0; k < un; ++k) {
    const double om = d.omega[k];
    const cplx e_minus = std::polar(1.0, -om);
    const cplx e_plus = std::polar(1.0, om);
    const double denom = 2 * std::cos(om);
    d.alpha_left[k] = (c1.left[k] + c0.left[k] * e_minus) / denom;
    d.beta_left[k] = (c0.left[k] * e_plus - c1.left[k]) / denom;
    d.alpha_right[k] = (c1.right[k] + c0.right[k] * e_minus) / denom;
    d.beta_right[k] = (c0.right[k] * e_plus - c1.right[k]) / denom;
  }
  return d;
}

ModeAmplitudes modes_at(const SpectralDecomposition& d, std::int64_t t) {
  if (t < 0) throw DomainError("modes_at: t must be non-negative");
  const auto n = static_cast<std::size_t>(d.n_sites);
  const double parity = (t % 2 == 0) ? 1.0 : -1.0;
  const double tt = static_cast<double>(t);
  ModeAmplitudes m{std::vector<cplx>(n), std::vector<cplx>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    // Reduce the phase before exponentiating to keep large t accurate.
    const double ph = std::remainder(d.omega[k] * tt, 2 * kPi);
    const cplx fwd = std::polar(1.0, ph);
    const cplx bwd = parity * std::conj(fwd);
    m.left[k] = d.alpha_left[k] * fwd + d.beta_left[k] * bwd;
    m.right[k] = d.alpha_right[k] * fwd + d.beta_right[k] * bwd;
  }
  return m;
}

WalkState amplitudes_at(const SpectralDecomposition& d, std::int64_t t) {
  return from_modes(modes_at(d, t), t);
}

}  // namespace qwalk
