#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bhs {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  // Throws DomainError if any entry is NaN/Inf or the size does not match.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexVector column(std::size_t j) const;
  ComplexMatrix adjoint() const;
  bool all_finite() const;
  double max_abs() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

namespace linalg {

double norm(std::span<const cplx> x);
ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x);
// A^* x
ComplexVector adjoint_matvec(const ComplexMatrix& a, std::span<const cplx> x);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
// alpha I + A^* A
ComplexMatrix regularized_gram(const ComplexMatrix& a, double alpha);

// LU with partial pivoting, for the square boundary-integral systems.
class LuFactor {
 public:
  explicit LuFactor(ComplexMatrix a);
  std::size_t size() const { return lu_.rows(); }
  ComplexVector solve(std::span<const cplx> b) const;
  // Solves A^* x = b.
  ComplexVector solve_adjoint(std::span<const cplx> b) const;
  bool singular() const { return singular_; }
  // Hager/Higham estimate of the 1-norm condition number.
  double condition_estimate() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  double norm1_ = 0.0;
  bool singular_ = false;
};

// Cholesky factor L (lower, row-major) of a Hermitian positive definite matrix.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const ComplexMatrix& a);
  std::size_t size() const { return l_.rows(); }
  ComplexVector solve(std::span<const cplx> b) const;

 private:
  ComplexMatrix l_;
};

// Regularized least squares min |A g - b|^2 + alpha |g|^2 through the normal
// equations (alpha I + A^* A) g = A^* b. The Hermitian factor depends only
// on A and alpha, so it is computed once and reused for every right-hand side.
class TikhonovSolver {
 public:
  TikhonovSolver(ComplexMatrix a, double alpha);
  ComplexVector solve(std::span<const cplx> b) const;
  const ComplexMatrix& matrix() const { return a_; }
  double alpha() const { return alpha_; }

 private:
  ComplexMatrix a_;
  double alpha_;
  CholeskyFactor factor_;
};

ComplexVector tikhonov_solve(const ComplexMatrix& a, std::span<const cplx> b, double alpha);

// Largest singular value by power iteration on A^* A (500 iterations max,
// relative tolerance 1e-12). Returns 0 for the zero matrix.
double spectral_norm(const ComplexMatrix& a);

}  // namespace linalg
}  // namespace bhs
