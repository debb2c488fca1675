#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

/// Fourier-mode amplitudes of both chirality channels.
struct ModeAmplitudes {
  std::vector<cplx> left;   // c_k^L
  std::vector<cplx> right;  // c_k^R
};

/// Closed-form solution of the walk in the circulant eigenbasis.
///
/// Each Fourier mode k evolves as
///   c_k(t) = alpha_k e^{i Omega_k t} + beta_k (-1)^t e^{-i Omega_k t}
/// with sin(Omega_k) = cos(theta) sin(2 pi k / N), Omega_k on the principal
/// branch [-pi/2, pi/2].
struct SpectralDecomposition {
  std::int64_t n_sites = 0;
  double theta = 0.0;
  std::vector<double> omega;
  std::vector<cplx> alpha_left;
  std::vector<cplx> alpha_right;
  std::vector<cplx> beta_left;
  std::vector<cplx> beta_right;
};

/// Forward transform c_k = sum_l conj(v_kl) x_l with v_kl = e^{2 pi i k l / N} / sqrt(N).
std::vector<cplx> fourier_forward(std::span<const cplx> x);

/// Inverse transform x_k = sum_l v_kl c_l.
std::vector<cplx> fourier_inverse(std::span<const cplx> c);

ModeAmplitudes fourier_coefficients(const WalkState& state);

/// Rebuilds the site amplitudes from mode amplitudes.
WalkState from_modes(const ModeAmplitudes& modes, std::int64_t time = 0);

/// Mode phase Omega_k for every k. No degeneracy check.
std::vector<double> mode_phases(std::int64_t n_sites, double theta);

/// Eigenvalue lambda_k = 2 i cos(theta) sin(2 pi k / N) of the two-step recurrence.
cplx recurrence_eigenvalue(std::int64_t n_sites, double theta, std::int64_t k);

/// Throws DegenerateSpectrumError if cos(Omega_k) vanishes for some mode,
/// i.e. |cos(theta) sin(2 pi k / N)| = 1 (theta = 0 with 4 | N).
void check_nondegenerate(std::int64_t n_sites, double theta);

/// Solves for alpha, beta from the state at t = 0 and one step later.
SpectralDecomposition decompose(const WalkState& initial, double theta);

/// c_k(t) for both channels.
ModeAmplitudes modes_at(const SpectralDecomposition& decomp, std::int64_t t);

/// Site amplitudes at time t from the closed form.
WalkState amplitudes_at(const SpectralDecomposition& decomp, std::int64_t t);

}  // namespace qwalk
