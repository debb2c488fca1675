#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd {

namespace {

void axpby_scalar(double* out, const double* x, const double* y, double c, double s,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c * x[i] + s * y[i];
}

CoinSums coin_sums_scalar(const cplx* a, const cplx* b, std::size_t n) {
  CoinSums r;
  for (std::size_t i = 0; i < n; ++i) {
    r.p_left += std::norm(a[i]);
    r.p_right += std::norm(b[i]);
    r.q += a[i] * std::conj(b[i]);
  }
  return r;
}

cplx dot_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{};
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

AverageCorrection average_correction_scalar(const cplx* u, const cplx* v, const cplx* w,
                                            const cplx* p, std::size_t n) {
  AverageCorrection r;
  cplx sv{}, sw{};
  for (std::size_t i = 0; i < n; ++i) {
    const cplx om = 1.0 - p[i];
    r.xi += (u[i] * om).real();
    sv += v[i] * om;
    sw += w[i] * std::conj(om);
  }
  r.varsigma = 0.5 * (sv + sw);
  return r;
}

void rotate_scalar(cplx* p, const cplx* factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] *= factor[i];
}

constexpr KernelTable kScalarTable{
    Isa::kScalar,       "scalar",
    &axpby_scalar,      &coin_sums_scalar,
    &dot_scalar,        &average_correction_scalar,
    &rotate_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalarTable; }

}  // namespace qwalk::simd
