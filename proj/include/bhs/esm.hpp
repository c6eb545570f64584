#pragma once

#include <span>
#include <string>
#include <vector>

#include "bhs/indicator.hpp"
#include "bhs/linalg.hpp"

namespace bhs::esm {

inline constexpr double default_alpha = 1e-4;

// Far field of the sound-soft disk of radius R centred at the origin,
//   -e^{-i pi/4} sqrt(2/(pi kappa)) [J_0/H_0 + 2 sum_n J_n/H_n cos(n(theta_x - theta_y))]
// with Bessel functions at kappa R.
cplx disk_far_field(double R, double kappa, double theta_x, double theta_y);

// Index of the last series term kept: the smallest n >= kappa R + 10 with
// |J_n / H_n| < 1e-14.
int disk_series_terms(double R, double kappa);

// Disk far-field operator sampled on the N-direction grid. Entries depend
// on (i - j) mod N only and are filled from one row, so the matrix is
// exactly circulant and symmetric.
class DiskKernel {
 public:
  DiskKernel(double R, double kappa, int N, int extra_terms = 0);

  double R() const { return R_; }
  double kappa() const { return kappa_; }
  int N() const { return N_; }
  const ComplexMatrix& matrix() const { return u_; }

 private:
  double R_, kappa_;
  int N_;
  ComplexMatrix u_;
};

// A^z[i][j] = exp(i kappa z.(yhat_j - xhat_i)) U[i][j]
ComplexMatrix translated_kernel(Vec2 z, const DiskKernel& kernel);

// One measured far-field pattern for one incident direction and wavenumber.
struct FarFieldColumn {
  double kappa;
  ComplexVector values;
};

enum class Route {
  // A^z = E_x^* U E_y with unimodular diagonals, so |g_z| equals the norm of
  // the Tikhonov solution against U for the phase-shifted data. One factor
  // per wavenumber serves every sampling point.
  Factored,
  // Builds and factors A^z at every point. Reference implementation.
  Direct,
};

struct EsmConfig {
  double alpha = default_alpha;
  double R = 1.0;
  SamplingGrid grid{-1.5, 1.5, -1.5, 1.5, 128, 128};
  Route route = Route::Factored;
};

struct EsmResult {
  IndicatorMap map;  // raw / max raw
  std::size_t argmin = 0;
  Vec2 z_star;
  double R_used = 0.0;  // after the Dirichlet-eigenvalue adjustment
  std::vector<std::string> warnings;
};

// Smallest |J_n(kappa R)| over the orders that can vanish there:
// 0 <= n < kappa R (and n <= kappa R + 10).
double dirichlet_margin(double R, double kappa);

// Grows R by 1% steps (at most 20) until every kappa clears the 1e-8 margin.
double admissible_radius(double R, std::span<const double> kappas, std::vector<std::string>* warnings);

// raw(z) = sum over columns of |g_z|; values = raw / max raw. Throws
// DataError for an identically zero column.
EsmResult esm_indicator(std::span<const FarFieldColumn> columns, const EsmConfig& config);

struct LevelRecord {
  int level;
  double R;         // nominal R0 / 2^level
  double R_used;    // after the Dirichlet adjustment
  Vec2 minimizer;
  int nx, ny;
};

struct LocalizationResult {
  Vec2 z_star;
  double R_final = 0.0;
  std::vector<LevelRecord> history;
  bool low_confidence = false;  // first refinement already escaped
  bool reached_cap = false;
  std::vector<std::string> warnings;
};

inline constexpr int max_levels = 8;

struct Region {
  double xmin, xmax, ymin, ymax;
};

// Multilevel radius selection. Level j uses R_j = R0 / 2^j on a lattice over
// `region` with spacing min(R_j, width/32), at most 256 points per axis.
// Stops when z_j leaves B(z_{j-1}, R_{j-1}) and returns level j-1; after
// level max_levels returns the last level.
LocalizationResult multilevel_esm(std::span<const FarFieldColumn> columns, double R0, const Region& region,
                                  const EsmConfig& config);

SamplingGrid level_grid(const Region& region, double R);

}  // namespace bhs::esm
