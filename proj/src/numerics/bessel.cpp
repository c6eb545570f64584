#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bhs/error.hpp"
#include "bhs/special_functions.hpp"

namespace bhs::special {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double big = 1e250;
constexpr double asymptotic_threshold = 25.0;

void check_order(int n, const char* fn) {
  if (n < 0 || n > max_order)
    throw DomainError(std::string(fn) + ": order " + std::to_string(n) + " outside [0, 200]");
}

void check_arg(double x, bool strictly_positive, const char* fn) {
  const bool bad = std::isnan(x) || x > max_argument || (strictly_positive ? x <= 0.0 : x < 0.0);
  if (bad)
    throw DomainError(std::string(fn) + ": argument " + std::to_string(x) + " outside supported range");
}

// J_k(x) for small x by the ascending series.
double j_series(int k, double x) {
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double lead = std::exp(k * std::log(half) - std::lgamma(k + 1.0));
  if (lead == 0.0) return 0.0;
  const double q = -half * half;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= q / (m * double(m + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// Miller backward recurrence. Returns J_0..J_top where top >= nmax is the
// start order, so callers needing the full normalized tail (Neumann sums for
// Y) can use it.
std::vector<double> miller(int nmax, double x) {
  const double scale = std::max<double>(nmax, x);
  const int start = 2 * ((static_cast<int>(scale + std::sqrt(160.0 * scale + 1.0)) + 12) / 2);
  std::vector<double> j(start + 2, 0.0);
  const double two_over_x = 2.0 / x;
  double next = 0.0, cur = 1e-300;
  j[start] = cur;
  double norm = 0.0;  // J_0 + 2 sum J_{2k}, accumulated unscaled
  for (int k = start; k >= 1; --k) {
    const double prev = k * two_over_x * cur - next;
    next = cur;
    cur = prev;
    j[k - 1] = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > big) {
      for (int i = k - 1; i <= start; ++i) j[i] /= big;
      norm /= big;
      cur /= big;
      next /= big;
    }
  }
  norm += j[0];
  for (double& v : j) v /= norm;
  return j;
}

// Hankel asymptotic expansion for order nu in {0, 1}, x large.
void jy_asymptotic(int nu, double x, double& jv, double& yv) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * pi;
  const double amp = std::sqrt(2.0 / (pi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  jv = amp * (p * c - q * s);
  yv = amp * (p * s + q * c);
}

Cyl01 jy01_miller(double x) {
  const auto j = miller(1, x);
  const double lg = std::log(0.5 * x) + euler_gamma;
  // Neumann expansions of Y_0 and Y_1 over the normalized J sequence.
  double s0 = 0.0, s1 = 0.0;
  const int top = static_cast<int>(j.size()) - 2;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  Cyl01 r{};
  r.j0 = j[0];
  r.j1 = j[1];
  if (x < 2.0) {
    r.j0 = j_series(0, x);
    r.j1 = j_series(1, x);
  }
  r.y0 = (2.0 / pi) * lg * j[0] - (4.0 / pi) * s0;
  r.y1 = -(2.0 / pi) * j[0] / x + (2.0 / pi) * lg * j[1] + (2.0 / pi) * s1;
  return r;
}

void k01_series(double x, double i0, double i1, double& k0, double& k1) {
  const double q = 0.25 * x * x;
  const double lg = std::log(0.5 * x);
  // K_0: -(ln(x/2)+gamma) I_0 + sum H_k q^k/(k!)^2
  double term = 1.0, harmonic = 0.0, s0 = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * k);
    harmonic += 1.0 / k;
    s0 += harmonic * term;
    if (term * harmonic < 1e-18 * std::abs(s0)) break;
  }
  k0 = -(lg + euler_gamma) * i0 + s0;
  // K_1: 1/x + I_1 ln(x/2) - (x/4) sum (psi(k+1)+psi(k+2)) q^k/(k!(k+1)!)
  double t = 1.0;
  double psi_a = -euler_gamma, psi_b = 1.0 - euler_gamma;
  double s1 = psi_a + psi_b;
  for (int k = 1; k < 60; ++k) {
    t *= q / (double(k) * (k + 1));
    psi_a += 1.0 / k;
    psi_b += 1.0 / (k + 1);
    const double d = t * (psi_a + psi_b);
    s1 += d;
    if (std::abs(d) < 1e-18 * std::abs(s1)) break;
  }
  k1 = 1.0 / x + i1 * lg - 0.25 * x * s1;
}

// Steed/Temme continued fraction for K_0, K_1 (x >= 2).
void k01_cf2(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h *= a1;
  k0 = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

void i01_series(double x, double& i0, double& i1) {
  const double q = 0.25 * x * x;
  double t0 = 1.0, s0 = 1.0;
  double t1 = 0.5 * x, s1 = t1;
  for (int k = 1; k < 1000; ++k) {
    t0 *= q / (double(k) * k);
    t1 *= q / (double(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (t0 < 1e-18 * s0 && t1 < 1e-18 * s1) break;
  }
  i0 = s0;
  i1 = s1;
}

}  // namespace

Cyl01 bessel_jy01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_jy01: argument must be positive");
  if (x >= asymptotic_threshold) {
    Cyl01 r{};
    jy_asymptotic(0, x, r.j0, r.y0);
    jy_asymptotic(1, x, r.j1, r.y1);
    return r;
  }
  return jy01_miller(x);
}

Mod01 bessel_ik01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_ik01: argument must be positive");
  Mod01 r{};
  i01_series(x, r.i0, r.i1);
  if (x <= 2.0)
    k01_series(x, r.i0, r.i1, r.k0, r.k1);
  else
    k01_cf2(x, r.k0, r.k1);
  return r;
}

K01 bessel_k01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k01: argument must be positive");
  if (x <= 2.0) {
    const Mod01 m = bessel_ik01(x);
    return {m.k0, m.k1};
  }
  K01 r{};
  k01_cf2(x, r.k0, r.k1);
  return r;
}

std::vector<double> bessel_j_sequence(int nmax, double x) {
  check_order(nmax, "bessel_j_sequence");
  check_arg(x, false, "bessel_j_sequence");
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < 2.0) {
    for (int k = 0; k <= nmax; ++k) out[k] = j_series(k, x);
    return out;
  }
  const auto j = miller(nmax, x);
  std::copy_n(j.begin(), nmax + 1, out.begin());
  return out;
}

std::vector<double> bessel_y_sequence(int nmax, double x) {
  check_order(nmax, "bessel_y_sequence");
  check_arg(x, true, "bessel_y_sequence");
  std::vector<double> out(nmax + 1);
  const Cyl01 c = bessel_jy01(x);
  out[0] = c.y0;
  if (nmax >= 1) out[1] = c.y1;
  for (int k = 1; k < nmax; ++k) out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1];
  return out;
}

std::vector<double> bessel_k_sequence(int nmax, double x) {
  check_order(nmax, "bessel_k_sequence");
  check_arg(x, true, "bessel_k_sequence");
  std::vector<double> out(nmax + 1);
  const Mod01 m = bessel_ik01(x);
  out[0] = m.k0;
  if (nmax >= 1) out[1] = m.k1;
  for (int k = 1; k < nmax; ++k) out[k + 1] = out[k - 1] + (2.0 * k / x) * out[k];
  return out;
}

double bessel_j(int n, double x) {
  check_order(n, "bessel_j");
  check_arg(x, false, "bessel_j");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 2.0) return j_series(n, x);
  return miller(n, x)[n];
}

double bessel_y(int n, double x) { return bessel_y_sequence(n, x)[n]; }

std::complex<double> hankel1(int n, double x) {
  check_arg(x, true, "hankel1");
  return {bessel_j(n, x), bessel_y(n, x)};
}

double bessel_k(int n, double x) { return bessel_k_sequence(n, x)[n]; }

std::complex<double> cyl_derivative(CylKind kind, int n, double x) {
  check_order(n, "cyl_derivative");
  switch (kind) {
    case CylKind::J: {
      check_arg(x, false, "cyl_derivative");
      if (x == 0.0) return n == 1 ? 0.5 : 0.0;
      const double up = (x < 2.0) ? j_series(n + 1, x) : miller(n + 1, x)[n + 1];
      if (n == 0) return -up;
      return 0.5 * (bessel_j(n - 1, x) - up);
    }
    case CylKind::H1: {
      check_arg(x, true, "cyl_derivative");
      std::vector<double> j(n + 2), y(n + 2);
      if (x < 2.0) {
        for (int k = 0; k <= n + 1; ++k) j[k] = j_series(k, x);
      } else {
        const auto m = miller(n + 1, x);
        std::copy_n(m.begin(), n + 2, j.begin());
      }
      const Cyl01 c = bessel_jy01(x);
      y[0] = c.y0;
      y[1] = c.y1;
      for (int k = 1; k <= n; ++k) y[k + 1] = (2.0 * k / x) * y[k] - y[k - 1];
      if (n == 0) return {-j[1], -y[1]};
      return {0.5 * (j[n - 1] - j[n + 1]), 0.5 * (y[n - 1] - y[n + 1])};
    }
    case CylKind::K: {
      check_arg(x, true, "cyl_derivative");
      const Mod01 m = bessel_ik01(x);
      std::vector<double> k(n + 2);
      k[0] = m.k0;
      k[1] = m.k1;
      for (int i = 1; i <= n; ++i) k[i + 1] = k[i - 1] + (2.0 * i / x) * k[i];
      if (n == 0) return -k[1];
      return -0.5 * (k[n - 1] + k[n + 1]);
    }
  }
  return 0.0;
}

}  // namespace bhs::special
