// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include <immintrin.h>

#include "bhs/simd.hpp"

namespace bhs::simd::detail {
namespace {

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[1] + t[3];
}

// Two complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), cross);
  }
  // same = [xr yr, xi yi], cross = [xr yi, xi yr]
  double re = hsum_even(same) + hsum_odd(same);
  double im = hsum_even(cross) - hsum_odd(cross);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), cross);
  }
  double re = hsum_even(same) - hsum_odd(same);
  double im = hsum_even(cross) + hsum_odd(cross);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    // [xr ar - xi ai, xi ar + xr ai]
    const __m256d p = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
    store2(y + i, _mm256_add_pd(load2(y + i), p));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_conj_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    // [xi ai + xr ar, xr ai - xi ar]
    const __m256d p = _mm256_fmsubadd_pd(xs, ai, _mm256_mul_pd(xv, ar));
    store2(y + i, _mm256_add_pd(load2(y + i), p));
  }
  for (; i < n; ++i) y[i] += a * std::conj(x[i]);
}

double norm2_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum_even(acc) + hsum_odd(acc);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

}  // namespace

const KernelTable avx2_table{dotc_avx2, dotu_avx2, axpy_avx2, axpy_conj_avx2, norm2_avx2};

}  // namespace bhs::simd::detail
