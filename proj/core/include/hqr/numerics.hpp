#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqr {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Raised when a numerical routine cannot deliver its postcondition
// (non-convergence, violated physical invariant). Bad arguments use
// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  // |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexVector apply(std::span<const Complex> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

// Largest absolute entry of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Largest absolute entry of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& u);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(std::span<const Complex> a, std::span<const Complex> b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors, same order
};

// Cyclic complex Jacobi sweeps. Throws std::invalid_argument for non-square
// or non-Hermitian input (beyond tol), NumericalError on non-convergence.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = 1e-10);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = 1e-10);

// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m, double tol = 1e-10);

struct Bipartition {
  std::size_t dim_a;
  std::size_t dim_b;
};

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double positivity = 1e-9;  // smallest eigenvalue must be >= -positivity
};

// Validated density operator. Construction checks Hermiticity, unit trace
// and positivity; violations raise NumericalError.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, std::optional<Bipartition> parts = std::nullopt,
                         const DensityTolerances& tol = {});

  static DensityMatrix from_pure(std::span<const Complex> psi,
                                 std::optional<Bipartition> parts = std::nullopt);
  static DensityMatrix maximally_mixed(std::size_t dim,
                                       std::optional<Bipartition> parts = std::nullopt);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::optional<Bipartition>& bipartition() const { return parts_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  ComplexMatrix matrix_;
  std::optional<Bipartition> parts_;
  double min_eigenvalue_ = 0.0;
};

// Transpose on subsystem A: entry ((a,b),(a',b')) <- ((a',b),(a,b')).
ComplexMatrix partial_transpose(const ComplexMatrix& m, const Bipartition& parts);
ComplexMatrix partial_transpose(const DensityMatrix& rho);

// Sum of |negative eigenvalues| of the partial transpose, i.e.
// (||rho^T_A||_1 - 1) / 2.
double negativity(const DensityMatrix& rho);

// <psi|rho|psi>; psi must be normalized within 1e-10.
double fidelity_with_pure(const DensityMatrix& rho, std::span<const Complex> psi);

// Trace over one side of a (dim_a*dim_b)-square matrix.
ComplexMatrix partial_trace_a(const ComplexMatrix& m, const Bipartition& parts);
ComplexMatrix partial_trace_b(const ComplexMatrix& m, const Bipartition& parts);

}  // namespace hqr
