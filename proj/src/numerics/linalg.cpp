#include "bhs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "bhs/error.hpp"
#include "bhs/simd.hpp"

namespace bhs {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DomainError("ComplexMatrix: data size does not match shape");
  if (!all_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

namespace linalg {

double norm(std::span<const cplx> x) { return std::sqrt(simd::norm2(x)); }

ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.cols()) throw DomainError("matvec: dimension mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::dotu(a.row(i), x);
  return y;
}

ComplexVector adjoint_matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.rows()) throw DomainError("adjoint_matvec: dimension mismatch");
  ComplexVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) simd::axpy_conj(x[i], a.row(i), y);
  return y;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("multiply: dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) simd::axpy(a(i, k), b.row(k), c.row(i));
  return c;
}

ComplexMatrix regularized_gram(const ComplexMatrix& a, double alpha) {
  const std::size_t n = a.cols();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto ai = a.row(i);
    for (std::size_t k = 0; k < n; ++k) simd::axpy(std::conj(ai[k]), ai, g.row(k));
  }
  for (std::size_t k = 0; k < n; ++k) g(k, k) += alpha;
  return g;
}

// ---------------------------------------------------------------------------

LuFactor::LuFactor(ComplexMatrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw DomainError("LuFactor: matrix must be square");
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(lu_(i, j));
    norm1_ = std::max(norm1_, s);
  }
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
    }
    const cplx pivot = lu_(k, k);
    const auto tail = lu_.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l != 0.0) simd::axpy(-l, tail, lu_.row(i).subspan(k + 1));
    }
  }
}

ComplexVector LuFactor::solve(std::span<const cplx> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw DomainError("LuFactor::solve: dimension mismatch");
  ComplexVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n; ++i)
    y[i] -= simd::dotu(lu_.row(i).first(i), std::span<const cplx>(y).first(i));
  for (std::size_t i = n; i-- > 0;) {
    const auto r = lu_.row(i);
    const cplx s = simd::dotu(r.subspan(i + 1), std::span<const cplx>(y).subspan(i + 1));
    y[i] = (y[i] - s) / r[i];
  }
  return y;
}

ComplexVector LuFactor::solve_adjoint(std::span<const cplx> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw DomainError("LuFactor::solve_adjoint: dimension mismatch");
  ComplexVector w(b.begin(), b.end());
  // U^* w' = b  (U^* lower triangular)
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = lu_.row(i);
    w[i] /= std::conj(r[i]);
    simd::axpy_conj(-w[i], r.subspan(i + 1), std::span<cplx>(w).subspan(i + 1));
  }
  // L^* v = w'  (unit upper triangular)
  for (std::size_t i = n; i-- > 1;) simd::axpy_conj(-w[i], lu_.row(i).first(i), std::span<cplx>(w).first(i));
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
  return x;
}

double LuFactor::condition_estimate() const {
  if (singular_) return std::numeric_limits<double>::infinity();
  const std::size_t n = size();
  ComplexVector x(n, cplx(1.0 / n));
  double est = 0.0;
  std::size_t last_j = n;
  for (int iter = 0; iter < 5; ++iter) {
    const ComplexVector y = solve(x);
    double e = 0.0;
    for (const auto& v : y) e += std::abs(v);
    if (iter > 0 && e <= est) break;
    est = e;
    ComplexVector xi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(y[i]);
      xi[i] = m > 0.0 ? y[i] / m : cplx(1.0);
    }
    const ComplexVector z = solve_adjoint(xi);
    std::size_t j = 0;
    double zmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        j = i;
      }
    }
    const double ztx = simd::dotc(z, x).real();
    if (zmax <= ztx || j == last_j) break;
    last_j = j;
    std::fill(x.begin(), x.end(), cplx(0.0));
    x[j] = 1.0;
  }
  // Alternative test vector guards against the estimator stalling.
  ComplexVector alt(n);
  for (std::size_t i = 0; i < n; ++i)
    alt[i] = ((i % 2) ? -1.0 : 1.0) * (1.0 + double(i) / std::max<std::size_t>(n - 1, 1));
  const ComplexVector ya = solve(alt);
  double ea = 0.0;
  for (const auto& v : ya) ea += std::abs(v);
  est = std::max(est, 2.0 * ea / (3.0 * n));
  return norm1_ * est;
}

// ---------------------------------------------------------------------------

CholeskyFactor::CholeskyFactor(const ComplexMatrix& a) : l_(a.rows(), a.cols()) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("CholeskyFactor: matrix must be square");
  for (std::size_t j = 0; j < n; ++j) {
    const auto lj = l_.row(j).first(j);
    const double d = a(j, j).real() - simd::norm2(lj);
    if (!(d > 0.0)) throw DomainError("CholeskyFactor: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const cplx s = simd::dotc(lj, l_.row(i).first(j));
      l_(i, j) = (a(i, j) - s) / ljj;
    }
  }
}

ComplexVector CholeskyFactor::solve(std::span<const cplx> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw DomainError("CholeskyFactor::solve: dimension mismatch");
  ComplexVector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = l_.row(i);
    y[i] = (y[i] - simd::dotu(r.first(i), std::span<const cplx>(y).first(i))) / r[i].real();
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto r = l_.row(i);
    y[i] /= r[i].real();
    simd::axpy_conj(-y[i], r.first(i), std::span<cplx>(y).first(i));
  }
  return y;
}

// ---------------------------------------------------------------------------

namespace {
double checked_alpha(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Tikhonov: alpha must be positive, got " + std::to_string(alpha));
  return alpha;
}
}  // namespace

TikhonovSolver::TikhonovSolver(ComplexMatrix a, double alpha)
    : a_(std::move(a)), alpha_(checked_alpha(alpha)), factor_(regularized_gram(a_, alpha_)) {}

ComplexVector TikhonovSolver::solve(std::span<const cplx> b) const {
  return factor_.solve(adjoint_matvec(a_, b));
}

ComplexVector tikhonov_solve(const ComplexMatrix& a, std::span<const cplx> b, double alpha) {
  checked_alpha(alpha);
  if (!a.all_finite()) throw DomainError("tikhonov_solve: non-finite matrix entry");
  return CholeskyFactor(regularized_gram(a, alpha)).solve(adjoint_matvec(a, b));
}

double spectral_norm(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  if (n == 0 || a.max_abs() == 0.0) return 0.0;
  ComplexVector v(n);
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  for (auto& z : v) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    const double re = double(s >> 11) * 0x1.0p-53;
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    const double im = double(s >> 11) * 0x1.0p-53;
    z = {0.5 + re, im - 0.5};
  }
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    const double nv = norm(v);
    for (auto& z : v) z /= nv;
    const ComplexVector w = matvec(a, v);
    const double next = norm(w);
    v = adjoint_matvec(a, w);
    const bool done = std::abs(next - sigma) <= 1e-12 * next;
    sigma = next;
    if (done || norm(v) == 0.0) break;
  }
  return sigma;
}

}  // namespace linalg
}  // namespace bhs
