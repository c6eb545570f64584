#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bhs/geometry.hpp"
#include "bhs/linalg.hpp"

namespace bhs::forward {

using geometry::BoundaryDiscretization;
using geometry::ParametricCurve;

// Plane wave exp(i kappa x.d).
struct PlaneWave {
  PlaneWave(double kappa, Vec2 d);
  double kappa;
  Vec2 d;

  cplx value(Vec2 x) const;
  // Normal derivative along nu.
  cplx normal_derivative(Vec2 x, Vec2 nu) const;
};

// Dirichlet and Neumann traces prescribed on the nodes.
struct BoundaryData {
  ComplexVector h1;
  ComplexVector h2;
};

// Clamped-plate data for plane-wave incidence: h1 = -u^i, h2 = -d_nu u^i.
BoundaryData plane_wave_data(const BoundaryDiscretization& disc, const PlaneWave& wave);

struct LayerDensities {
  ComplexVector phiH;  // Helmholtz single-layer density
  ComplexVector phiM;  // modified-Helmholtz single-layer density
};

struct ScatteredValue {
  cplx total;
  cplx helmholtz;
  cplx modified;
};

// F[i][j] = u^inf(xhat_i, d_j) on the equiangular grid theta_i = 2 pi i / N.
struct FarFieldMatrix {
  double kappa = 0.0;
  int N = 0;
  ComplexMatrix F;
};

double direction_angle(int i, int N);
Vec2 direction(int i, int N);

// Block Nystrom matrix for the single-layer pair u_H = S phi_H, u_M = S~ phi_M:
//
//   [ S          S~         ] [phi_H]   [h1]
//   [ K' - I/2   K~' - I/2  ] [phi_M] = [h2]
//
// with Kress log-splitting for every weakly singular kernel.
ComplexMatrix assemble_system(const BoundaryDiscretization& disc, double kappa);

// Factored system for one (boundary, kappa). Throws IllConditionedError when the
// condition estimate exceeds 1e12. Immutable after construction, so solves
// may run concurrently.
class ForwardSolver {
 public:
  ForwardSolver(BoundaryDiscretization disc, double kappa);

  LayerDensities solve(const BoundaryData& data) const;
  const BoundaryDiscretization& discretization() const { return disc_; }
  double kappa() const { return kappa_; }
  double condition_estimate() const { return condition_; }

  static constexpr double max_condition = 1e12;

 private:
  BoundaryDiscretization disc_;
  double kappa_;
  linalg::LuFactor lu_;
  double condition_;
};

LayerDensities solve_clamped(const BoundaryDiscretization& disc, double kappa, const BoundaryData& data);

// Plain trapezoid evaluation; requires distance to the nodes above twice the
// largest node spacing, else NearBoundaryError.
ScatteredValue evaluate_scattered(const LayerDensities& dens, const BoundaryDiscretization& disc, double kappa,
                                  Vec2 x);

// u^inf(xhat) = sum_j exp(-i kappa xhat.y_j) phi_H(y_j) |x'(t_j)| pi/n. The
// modified component is evanescent and has no far field.
cplx far_field(const LayerDensities& dens, const BoundaryDiscretization& disc, double kappa, Vec2 xhat);

// Far-field patterns on the N-direction observation grid, one column per
// incident direction in `incident`.
std::vector<ComplexVector> far_field_columns(const ParametricCurve& curve, double kappa, int N, int n,
                                             std::span<const Vec2> incident);

// Full N x N matrix with incident directions on the observation grid.
// N must be even and at least 8.
FarFieldMatrix far_field_matrix(const ParametricCurve& curve, double kappa, int N, int n);

// max_{i,j} |F(-xhat_i, d_j) - F(-d_j, xhat_i)| / max|F|. Requires even N.
double reciprocity_residual(const FarFieldMatrix& f);

// v_g(x) = (2 pi / N) sum_j exp(i kappa x.d_j) g_j
cplx herglotz_wave(std::span<const cplx> g, double kappa, Vec2 x);

// Mode-matching far field of the clamped disk of radius R centred at the
// origin, under the same normalization as far_field.
cplx analytic_disk_far_field(double R, double kappa, Vec2 d, Vec2 xhat);
int disk_mode_count(double R, double kappa);

// F_ij (1 + delta E_ij) with E uniform complex noise normalized to |E|_2 = 1.
FarFieldMatrix add_noise(const FarFieldMatrix& f, double delta, std::uint64_t seed);
ComplexMatrix noise_matrix(int N, std::uint64_t seed);

}  // namespace bhs::forward
