#pragma once

#include <span>

#include "bhs/forward.hpp"
#include "bhs/indicator.hpp"
#include "bhs/linalg.hpp"

namespace bhs::lsm {

inline constexpr double default_alpha = 1e-6;

// Far-field pattern of the fundamental solution of the plate operator,
//   -(1 / 2 kappa^2) e^{i pi/4} / sqrt(8 pi kappa) exp(-i kappa xhat.z),
// on the N-direction grid.
ComplexVector phi_infinity_rhs(Vec2 z, double kappa, int N);

// I(z) = 1 / |g_z|^2 with (alpha I + F^*F) g_z = F^* phi_z; one factorization
// serves every grid point.
IndicatorMap lsm_indicator(const forward::FarFieldMatrix& f, const SamplingGrid& grid, double alpha);

struct MorozovResult {
  double alpha;
  bool fallback;  // no sign change on the bracket; alpha is the default
};

// Solves |F g - rhs| = delta |F|_2 |g| for alpha by bisection in log10(alpha)
// on [-14, 2] (60 steps).
MorozovResult morozov_alpha(const ComplexMatrix& f, std::span<const cplx> rhs, double delta);

// Variant choosing alpha per sampling point by the discrepancy principle.
// meta.alpha records the median of the chosen values.
IndicatorMap lsm_indicator_morozov(const forward::FarFieldMatrix& f, const SamplingGrid& grid, double delta);

// mask_k = normalized value_k > zeta
Mask classify(const IndicatorMap& map, double zeta);

}  // namespace bhs::lsm
