#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bhs/error.hpp"
#include "bhs/forward.hpp"
#include "bhs/special_functions.hpp"

namespace bhs::forward {

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double checked_kappa(double kappa, const char* where) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw DomainError(std::string(where) + ": kappa must be positive, got " + std::to_string(kappa));
  return kappa;
}
}  // namespace

PlaneWave::PlaneWave(double k, Vec2 dir) : kappa(checked_kappa(k, "PlaneWave")), d(dir) {
  if (std::abs(length(dir) - 1.0) > 1e-14) throw DomainError("PlaneWave: direction must be a unit vector");
}

cplx PlaneWave::value(Vec2 x) const { return std::exp(I * (kappa * dot(x, d))); }

cplx PlaneWave::normal_derivative(Vec2 x, Vec2 nu) const { return I * kappa * dot(d, nu) * value(x); }

BoundaryData plane_wave_data(const BoundaryDiscretization& disc, const PlaneWave& wave) {
  BoundaryData b;
  b.h1.resize(disc.size());
  b.h2.resize(disc.size());
  for (std::size_t i = 0; i < disc.size(); ++i) {
    b.h1[i] = -wave.value(disc.nodes[i]);
    b.h2[i] = -wave.normal_derivative(disc.nodes[i], disc.normals[i]);
  }
  return b;
}

double direction_angle(int i, int N) { return 2.0 * pi * i / N; }

Vec2 direction(int i, int N) { return unit_direction(direction_angle(i, N)); }

ForwardSolver::ForwardSolver(BoundaryDiscretization disc, double kappa)
    : disc_(std::move(disc)), kappa_(checked_kappa(kappa, "ForwardSolver")), lu_(assemble_system(disc_, kappa_)) {
  condition_ = lu_.condition_estimate();
  if (!(condition_ <= max_condition)) throw IllConditionedError(kappa_, condition_);
}

LayerDensities ForwardSolver::solve(const BoundaryData& data) const {
  const std::size_t m = disc_.size();
  if (data.h1.size() != m || data.h2.size() != m)
    throw DomainError("ForwardSolver::solve: boundary data length does not match node count");
  ComplexVector rhs(2 * m);
  std::copy(data.h1.begin(), data.h1.end(), rhs.begin());
  std::copy(data.h2.begin(), data.h2.end(), rhs.begin() + m);
  const ComplexVector x = lu_.solve(rhs);
  return {ComplexVector(x.begin(), x.begin() + m), ComplexVector(x.begin() + m, x.end())};
}

LayerDensities solve_clamped(const BoundaryDiscretization& disc, double kappa, const BoundaryData& data) {
  return ForwardSolver(disc, kappa).solve(data);
}

ScatteredValue evaluate_scattered(const LayerDensities& dens, const BoundaryDiscretization& disc, double kappa,
                                  Vec2 x) {
  checked_kappa(kappa, "evaluate_scattered");
  const std::size_t m = disc.size();
  if (dens.phiH.size() != m || dens.phiM.size() != m)
    throw DomainError("evaluate_scattered: density length does not match node count");
  double dmin = std::numeric_limits<double>::infinity();
  for (const Vec2& y : disc.nodes) dmin = std::min(dmin, length(x - y));
  const double limit = 2.0 * disc.max_spacing();
  if (!(dmin > limit))
    throw NearBoundaryError("evaluate_scattered: point at distance " + std::to_string(dmin) +
                            " from the boundary nodes (needs > " + std::to_string(limit) + ")");
  cplx uh = 0.0, um = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double z = kappa * length(x - disc.nodes[j]);
    const double w = disc.jacobian[j] * disc.weight;
    const special::Cyl01 c = special::bessel_jy01(z);
    uh += I / 4.0 * cplx(c.j0, c.y0) * dens.phiH[j] * w;
    um += special::bessel_k01(z).k0 / (2.0 * pi) * dens.phiM[j] * w;
  }
  return {uh + um, uh, um};
}

cplx far_field(const LayerDensities& dens, const BoundaryDiscretization& disc, double kappa, Vec2 xhat) {
  checked_kappa(kappa, "far_field");
  if (std::abs(length(xhat) - 1.0) > 1e-12) throw DomainError("far_field: xhat must be a unit vector");
  cplx s = 0.0;
  for (std::size_t j = 0; j < disc.size(); ++j)
    s += std::exp(-I * (kappa * dot(xhat, disc.nodes[j]))) * dens.phiH[j] * disc.jacobian[j];
  return s * disc.weight;
}

std::vector<ComplexVector> far_field_columns(const ParametricCurve& curve, double kappa, int N, int n,
                                             std::span<const Vec2> incident) {
  if (N < 1) throw DomainError("far_field_columns: N must be positive");
  const ForwardSolver solver(geometry::discretize(curve, n), kappa);
  const auto& disc = solver.discretization();
  std::vector<ComplexVector> cols;
  cols.reserve(incident.size());
  for (const Vec2& d : incident) {
    const LayerDensities dens = solver.solve(plane_wave_data(disc, PlaneWave(kappa, d)));
    ComplexVector col(N);
    for (int i = 0; i < N; ++i) col[i] = far_field(dens, disc, kappa, direction(i, N));
    cols.push_back(std::move(col));
  }
  return cols;
}

FarFieldMatrix far_field_matrix(const ParametricCurve& curve, double kappa, int N, int n) {
  if (N < 8 || N % 2 != 0) throw DomainError("far_field_matrix: N must be even and >= 8, got " + std::to_string(N));
  std::vector<Vec2> dirs(N);
  for (int j = 0; j < N; ++j) dirs[j] = direction(j, N);
  const auto cols = far_field_columns(curve, kappa, N, n, dirs);
  FarFieldMatrix f{kappa, N, ComplexMatrix(N, N)};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) f.F(i, j) = cols[j][i];
  return f;
}

double reciprocity_residual(const FarFieldMatrix& f) {
  const int N = f.N;
  if (N < 2 || N % 2 != 0) throw DomainError("reciprocity_residual: needs even N, got " + std::to_string(N));
  const double scale = f.F.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(f.F((i + N / 2) % N, j) - f.F((j + N / 2) % N, i)));
  return worst / scale;
}

cplx herglotz_wave(std::span<const cplx> g, double kappa, Vec2 x) {
  const int N = static_cast<int>(g.size());
  if (N == 0) return 0.0;
  cplx s = 0.0;
  for (int j = 0; j < N; ++j) s += std::exp(I * (kappa * dot(x, direction(j, N)))) * g[j];
  return 2.0 * pi / N * s;
}

}  // namespace bhs::forward
