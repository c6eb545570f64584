#include <cmath>
#include <string>

#include "bhs/error.hpp"
#include "bhs/forward.hpp"
#include "bhs/special_functions.hpp"

namespace bhs::forward {

int disk_mode_count(double R, double kappa) {
  const double kr = kappa * R;
  return static_cast<int>(std::ceil(kr + 8.0 * std::cbrt(kr) + 12.0));
}

// Per mode n the scattered field is a_n H_n(kappa r) + b_n K_n(kappa r); the
// clamped conditions at r = R give
//   a H + b K = -i^n J,   a H' + b K' = -i^n J'.
// Eliminating b with rho = K'/K keeps large-order K out of the arithmetic.
// Matching H_n's large-argument form against the far-field normalization
// gives u^inf = -4i sum_n a_n (-i)^n e^{in phi}.
cplx analytic_disk_far_field(double R, double kappa, Vec2 d, Vec2 xhat) {
  if (!(R > 0.0) || !(kappa > 0.0)) throw DomainError("analytic_disk_far_field: R and kappa must be positive");
  const int nm = disk_mode_count(R, kappa);
  if (nm + 1 > special::max_order) throw DomainError("analytic_disk_far_field: too many modes for kappa*R");
  const double x = kappa * R;
  const auto J = special::bessel_j_sequence(nm + 1, x);
  const auto Y = special::bessel_y_sequence(nm + 1, x);
  const auto K = special::bessel_k_sequence(nm + 1, x);
  const double phi = std::atan2(d.x * xhat.y - d.y * xhat.x, dot(d, xhat));

  const cplx I{0.0, 1.0};
  cplx sum = 0.0;
  cplx in = 1.0;  // i^n
  for (int n = 0; n <= nm; ++n) {
    const double jd = n == 0 ? -J[1] : J[n - 1] - n / x * J[n];
    const double yd = n == 0 ? -Y[1] : Y[n - 1] - n / x * Y[n];
    const double rho = n == 0 ? -K[1] / K[0] : -K[n - 1] / K[n] - n / x;
    const cplx H{J[n], Y[n]}, Hd{jd, yd};
    const cplx det = H * rho - Hd;
    if (std::abs(det) < 1e-300) throw DomainError("analytic_disk_far_field: singular mode system at n=" + std::to_string(n));
    const cplx a = -in * (J[n] * rho - jd) / det;
    const cplx term = a * std::conj(in) * std::cos(n * phi);  // (-i)^n = conj(i^n)
    sum += n == 0 ? term : 2.0 * term;
    in *= I;
  }
  return -4.0 * I * sum;
}

}  // namespace bhs::forward
