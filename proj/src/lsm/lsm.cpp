#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bhs/error.hpp"
#include "bhs/lsm.hpp"
#include "bhs/simd.hpp"

namespace bhs::lsm {

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void check_square(const forward::FarFieldMatrix& f) {
  if (f.N < 1 || f.F.rows() != std::size_t(f.N) || f.F.cols() != std::size_t(f.N))
    throw DomainError("far-field matrix must be N x N");
}

// |F g - b| - delta |F|_2 |g| for g = g_alpha.
double discrepancy(const ComplexMatrix& f, std::span<const cplx> b, double delta, double fnorm, double alpha) {
  const ComplexVector g = linalg::tikhonov_solve(f, b, alpha);
  ComplexVector r = linalg::matvec(f, g);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return linalg::norm(r) - delta * fnorm * linalg::norm(g);
}

MorozovResult morozov_with_norm(const ComplexMatrix& f, std::span<const cplx> rhs, double delta, double fnorm) {
  double lo = -14.0, hi = 2.0;
  const double dlo = discrepancy(f, rhs, delta, fnorm, std::pow(10.0, lo));
  const double dhi = discrepancy(f, rhs, delta, fnorm, std::pow(10.0, hi));
  if (!(dlo <= 0.0 && dhi >= 0.0)) return {default_alpha, true};
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (discrepancy(f, rhs, delta, fnorm, std::pow(10.0, mid)) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {std::pow(10.0, 0.5 * (lo + hi)), false};
}
}  // namespace

ComplexVector phi_infinity_rhs(Vec2 z, double kappa, int N) {
  if (!(kappa > 0.0)) throw DomainError("phi_infinity_rhs: kappa must be positive");
  if (N < 2 || N % 2 != 0) throw DomainError("phi_infinity_rhs: N must be even, got " + std::to_string(N));
  const cplx c = -1.0 / (2.0 * kappa * kappa) * std::exp(I * (pi / 4.0)) / std::sqrt(8.0 * pi * kappa);
  ComplexVector v(N);
  for (int i = 0; i < N; ++i) v[i] = c * std::exp(-I * (kappa * dot(forward::direction(i, N), z)));
  return v;
}

IndicatorMap lsm_indicator(const forward::FarFieldMatrix& f, const SamplingGrid& grid, double alpha) {
  check_square(f);
  const linalg::TikhonovSolver solver(f.F, alpha);
  IndicatorMap map{grid, std::vector<double>(grid.size()), {"lsm", {f.kappa}, alpha, 0.0, 0, 0.0}};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const ComplexVector g = solver.solve(phi_infinity_rhs(grid.point(k), f.kappa, f.N));
    const double n2 = simd::norm2(g);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DataError("lsm_indicator: degenerate solution at grid point " + std::to_string(k));
    map.values[k] = 1.0 / n2;
  }
  return map;
}

MorozovResult morozov_alpha(const ComplexMatrix& f, std::span<const cplx> rhs, double delta) {
  if (!(delta > 0.0)) throw DomainError("morozov_alpha: delta must be positive");
  if (rhs.size() != f.rows()) throw DomainError("morozov_alpha: dimension mismatch");
  return morozov_with_norm(f, rhs, delta, linalg::spectral_norm(f));
}

IndicatorMap lsm_indicator_morozov(const forward::FarFieldMatrix& f, const SamplingGrid& grid, double delta) {
  check_square(f);
  if (!(delta > 0.0)) throw DomainError("lsm_indicator_morozov: delta must be positive");
  const double fnorm = linalg::spectral_norm(f.F);
  IndicatorMap map{grid, std::vector<double>(grid.size()), {"lsm-morozov", {f.kappa}, 0.0, delta, 0, 0.0}};
  std::vector<double> alphas(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const ComplexVector rhs = phi_infinity_rhs(grid.point(k), f.kappa, f.N);
    alphas[k] = morozov_with_norm(f.F, rhs, delta, fnorm).alpha;
    map.values[k] = 1.0 / simd::norm2(linalg::tikhonov_solve(f.F, rhs, alphas[k]));
  }
  std::nth_element(alphas.begin(), alphas.begin() + alphas.size() / 2, alphas.end());
  map.meta.alpha = alphas[alphas.size() / 2];
  return map;
}

Mask classify(const IndicatorMap& map, double zeta) {
  if (!(zeta > 0.0)) throw DomainError("classify: zeta must be positive");
  const auto v = map.normalized();
  Mask m{map.grid, std::vector<std::uint8_t>(v.size())};
  for (std::size_t k = 0; k < v.size(); ++k) m.inside[k] = v[k] > zeta ? 1 : 0;
  return m;
}

}  // namespace bhs::lsm
