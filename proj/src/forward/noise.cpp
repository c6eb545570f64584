#include <random>
#include <string>

#include "bhs/error.hpp"
#include "bhs/forward.hpp"

namespace bhs::forward {

namespace {
// 53-bit uniform on [-1, 1], spelled out so the stream does not depend on the
// standard library's distribution implementation.
double uniform_pm1(std::mt19937_64& gen) { return 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0; }
}  // namespace

ComplexMatrix noise_matrix(int N, std::uint64_t seed) {
  if (N < 1) throw DomainError("noise_matrix: N must be positive");
  std::mt19937_64 gen(seed);
  ComplexMatrix e(N, N);
  for (auto& z : e.data()) {
    const double re = uniform_pm1(gen);
    const double im = uniform_pm1(gen);
    z = {re, im};
  }
  const double s = linalg::spectral_norm(e);
  for (auto& z : e.data()) z /= s;
  return e;
}

FarFieldMatrix add_noise(const FarFieldMatrix& f, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw DomainError("add_noise: delta must be nonnegative, got " + std::to_string(delta));
  if (delta == 0.0) return f;
  const ComplexMatrix e = noise_matrix(f.N, seed);
  FarFieldMatrix out = f;
  auto dst = out.F.data();
  const auto src = e.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] *= 1.0 + delta * src[k];
  return out;
}

}  // namespace bhs::forward
