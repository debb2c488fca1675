// AVX2 + FMA kernels. This file is compiled with -mavx2 -mfma and must only
// be entered after dispatch has confirmed CPU support.

#include <immintrin.h>

#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd {

namespace {

// Two complex doubles per register: [re0 im0 re1 im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d yre = _mm256_movedup_pd(y);
  const __m256d yim = _mm256_permute_pd(y, 0xF);
  const __m256d xsw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, yre, _mm256_mul_pd(xsw, yim));
}

// x * conj(y)
inline __m256d cmul_conj(__m256d x, __m256d y) {
  const __m256d yre = _mm256_movedup_pd(y);
  const __m256d yim = _mm256_permute_pd(y, 0xF);
  const __m256d xsw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmsubadd_pd(x, yre, _mm256_mul_pd(xsw, yim));
}

inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

inline double hsum4(__m256d v) {
  const cplx c = hsum2(v);
  return c.real() + c.imag();
}

void axpby_avx2(double* out, const double* x, const double* y, double c, double s,
                std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vc, vx, _mm256_mul_pd(vs, vy)));
  }
  for (; i < n; ++i) out[i] = c * x[i] + s * y[i];
}

CoinSums coin_sums_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d pl = _mm256_setzero_pd();
  __m256d pr = _mm256_setzero_pd();
  __m256d q = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    pl = _mm256_fmadd_pd(va, va, pl);
    pr = _mm256_fmadd_pd(vb, vb, pr);
    q = _mm256_add_pd(q, cmul_conj(va, vb));
  }
  CoinSums r{hsum4(pl), hsum4(pr), hsum2(q)};
  for (; i < n; ++i) {
    r.p_left += std::norm(a[i]);
    r.p_right += std::norm(b[i]);
    r.q += a[i] * std::conj(b[i]);
  }
  return r;
}

cplx dot_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, cmul(load2(x + i), load2(y + i)));
  cplx r = hsum2(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

AverageCorrection average_correction_avx2(const cplx* u, const cplx* v, const cplx* w,
                                          const cplx* p, std::size_t n) {
  const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  __m256d xi = _mm256_setzero_pd();
  __m256d sv = _mm256_setzero_pd();
  __m256d sw = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d om = _mm256_sub_pd(one, load2(p + i));
    xi = _mm256_add_pd(xi, cmul(load2(u + i), om));
    sv = _mm256_add_pd(sv, cmul(load2(v + i), om));
    sw = _mm256_add_pd(sw, cmul(load2(w + i), _mm256_xor_pd(om, conj_mask)));
  }
  AverageCorrection r;
  r.xi = hsum2(xi).real();
  cplx tv = hsum2(sv);
  cplx tw = hsum2(sw);
  for (; i < n; ++i) {
    const cplx om = 1.0 - p[i];
    r.xi += (u[i] * om).real();
    tv += v[i] * om;
    tw += w[i] * std::conj(om);
  }
  r.varsigma = 0.5 * (tv + tw);
  return r;
}

void rotate_avx2(cplx* p, const cplx* factor, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(p + i, cmul(load2(p + i), load2(factor + i)));
  for (; i < n; ++i) p[i] *= factor[i];
}

constexpr KernelTable kAvx2Table{
    Isa::kAvx2,       "avx2",
    &axpby_avx2,      &coin_sums_avx2,
    &dot_avx2,        &average_correction_avx2,
    &rotate_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2Table; }

}  // namespace qwalk::simd
