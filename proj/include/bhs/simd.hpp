#pragma once

// Complex-vector inner kernels with a scalar reference implementation and an
// AVX2/FMA variant picked at runtime. All higher-level dense linear algebra
// (LU, Cholesky, matvec, far-field sums) funnels through this table.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bhs::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i x_i * y_i
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // y += a * x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y += a * conj(x)
  void (*axpy_conj)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_i |x_i|^2
  double (*norm2)(const cplx* x, std::size_t n);
};

bool available(Backend b);
const KernelTable& kernels(Backend b);

// The active table. Defaults to the widest backend the CPU supports.
const KernelTable& kernels();
Backend active_backend();
void set_backend(Backend b);
std::string_view name(Backend b);

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  return kernels().dotc(x.data(), y.data(), x.size());
}
inline cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
  return kernels().dotu(x.data(), y.data(), x.size());
}
inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}
inline void axpy_conj(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  kernels().axpy_conj(a, x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> x) { return kernels().norm2(x.data(), x.size()); }

namespace detail {
extern const KernelTable scalar_table;
#if defined(BHS_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace bhs::simd
