#pragma once

// Inner-loop kernels shared by the walk, spectral and averaging code.
//
// Every kernel has a portable scalar reference implementation. An AVX2+FMA
// variant is compiled on x86-64 and picked at runtime when the CPU supports
// it. The environment variable QWALK_ISA=scalar|avx2 overrides the choice
// at startup; select_isa() overrides it programmatically.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qwalk::simd {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

struct CoinSums {
  double p_left = 0.0;   // sum |a_k|^2
  double p_right = 0.0;  // sum |b_k|^2
  cplx q{};              // sum a_k conj(b_k)
};

struct AverageCorrection {
  double xi = 0.0;
  cplx varsigma{};
};

struct KernelTable {
  Isa isa;
  std::string_view name;

  // out[i] = c * x[i] + s * y[i] for i < n (n counts doubles).
  void (*axpby)(double* out, const double* x, const double* y, double c, double s,
                std::size_t n);

  CoinSums (*coin_sums)(const cplx* a, const cplx* b, std::size_t n);

  // sum x[i] * y[i], no conjugation.
  cplx (*dot)(const cplx* x, const cplx* y, std::size_t n);

  // xi = sum Re(u (1 - p)),  varsigma = 1/2 sum [v (1 - p) + w (1 - conj p)].
  AverageCorrection (*average_correction)(const cplx* u, const cplx* v, const cplx* w,
                                          const cplx* p, std::size_t n);

  // p[i] *= factor[i]
  void (*rotate)(cplx* p, const cplx* factor, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 translation unit was not built for this target.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);

// Kernels currently in use by the library.
const KernelTable& active();

Isa active_isa();

// Throws std::runtime_error if the ISA is not available on this machine.
void select_isa(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace qwalk::simd
