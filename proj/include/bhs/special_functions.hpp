#pragma once

// Integer-order cylinder functions of real argument.
//
// Supported public range: 0 <= n <= 200, x <= 500. J is evaluated by Miller's
// backward recurrence (power series below x = 2), Y and K by forward
// recurrence from their order-0/1 values.

#include <complex>
#include <vector>

namespace bhs::special {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr int max_order = 200;
inline constexpr double max_argument = 500.0;

double bessel_j(int n, double x);
double bessel_y(int n, double x);
std::complex<double> hankel1(int n, double x);
double bessel_k(int n, double x);

enum class CylKind { J, H1, K };

// d/dx C_n(x). Imaginary part is zero for J and K.
std::complex<double> cyl_derivative(CylKind kind, int n, double x);

// J_0..J_nmax and Y_0..Y_nmax in one sweep. Y overflows to -inf for very
// large orders at small argument.
std::vector<double> bessel_j_sequence(int nmax, double x);
std::vector<double> bessel_y_sequence(int nmax, double x);
std::vector<double> bessel_k_sequence(int nmax, double x);

// Order 0 and 1 values used by the boundary kernels. No upper bound on x:
// large arguments switch to the Hankel asymptotic expansion.
struct Cyl01 {
  double j0, j1, y0, y1;
};
Cyl01 bessel_jy01(double x);

struct Mod01 {
  double i0, i1, k0, k1;
};
// I_0, I_1 by power series, K_0, K_1 by series (x <= 2) or Steed/Temme
// continued fraction.
Mod01 bessel_ik01(double x);

// K_0, K_1 alone; no upper bound on x (underflows to 0 gracefully).
struct K01 {
  double k0, k1;
};
K01 bessel_k01(double x);

}  // namespace bhs::special
