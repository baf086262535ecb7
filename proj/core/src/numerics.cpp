#include "hqr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hqr {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

double off_diagonal_norm_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  ComplexVector out(rows_, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_defect: matrix is not square");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return d;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) throw std::invalid_argument("unitarity_defect: matrix is not square");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return m;
}

ComplexVector tensor(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector v;
  v.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) v.push_back(x * y);
  }
  return v;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  const std::size_t n = m.rows();
  // Symmetrize so rounding in the input does not leak into the rotations.
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale_sq = 0.0;
  for (const auto& e : a.entries()) scale_sq += std::norm(e);
  const double target = 1e-27 * std::max(scale_sq, 1e-300);

  constexpr int kMaxSweeps = 100;
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm_sq(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag * mag <= target / static_cast<double>(n * n)) continue;
        // Phase-strip the pivot to a real 2x2 problem, then rotate.
        const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * phase;
        const Complex uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm_sq(a) > target) {
    throw NumericalError("hermitian_eigen: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  return hermitian_eigen(m, tol).values;
}

double trace_norm(const ComplexMatrix& m, double tol) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(m, tol)) s += std::abs(x);
  return s;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::optional<Bipartition> parts,
                             const DensityTolerances& tol)
    : matrix_(std::move(m)), parts_(parts) {
  if (!matrix_.is_square() || matrix_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (parts_ && parts_->dim_a * parts_->dim_b != matrix_.rows()) {
    throw std::invalid_argument("DensityMatrix: bipartition does not match dimension");
  }
  const double herm = hermiticity_defect(matrix_);
  if (herm > tol.hermiticity) {
    throw NumericalError("DensityMatrix: Hermiticity defect " + std::to_string(herm));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw NumericalError("DensityMatrix: trace deviates from 1 by " + std::to_string(std::abs(tr - 1.0)));
  }
  const auto values = hermitian_eigenvalues(matrix_, tol.hermiticity);
  min_eigenvalue_ = values.front();
  if (min_eigenvalue_ < -tol.positivity) {
    throw NumericalError("DensityMatrix: negative eigenvalue " + std::to_string(min_eigenvalue_));
  }
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> psi, std::optional<Bipartition> parts) {
  return DensityMatrix(ComplexMatrix::outer(psi, psi), parts);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim, std::optional<Bipartition> parts) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m), parts);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const Bipartition& parts) {
  const std::size_t da = parts.dim_a;
  const std::size_t db = parts.dim_b;
  if (!m.is_square() || m.rows() != da * db) {
    throw std::invalid_argument("partial_transpose: bipartition does not match dimension");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      for (std::size_t a2 = 0; a2 < da; ++a2) {
        for (std::size_t b2 = 0; b2 < db; ++b2) {
          out(a * db + b, a2 * db + b2) = m(a2 * db + b, a * db + b2);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  if (!rho.bipartition()) throw std::invalid_argument("partial_transpose: density matrix has no bipartition");
  return partial_transpose(rho.matrix(), *rho.bipartition());
}

double negativity(const DensityMatrix& rho) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(partial_transpose(rho), 1e-9)) {
    if (x < 0.0) s -= x;
  }
  return s;
}

double fidelity_with_pure(const DensityMatrix& rho, std::span<const Complex> psi) {
  if (psi.size() != rho.dim()) throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  const double n = norm(psi);
  if (std::abs(n * n - 1.0) > 1e-10) throw std::invalid_argument("fidelity_with_pure: psi is not normalized");
  const Complex f = inner(psi, rho.matrix().apply(psi));
  if (std::abs(f.imag()) > 1e-10) throw NumericalError("fidelity_with_pure: non-real expectation value");
  return std::clamp(f.real(), 0.0, 1.0);
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m, const Bipartition& parts) {
  const std::size_t da = parts.dim_a;
  const std::size_t db = parts.dim_b;
  if (!m.is_square() || m.rows() != da * db) {
    throw std::invalid_argument("partial_trace_b: bipartition does not match dimension");
  }
  ComplexMatrix out(da, da);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t a2 = 0; a2 < da; ++a2) {
      Complex acc{0.0, 0.0};
      for (std::size_t b = 0; b < db; ++b) acc += m(a * db + b, a2 * db + b);
      out(a, a2) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, const Bipartition& parts) {
  const std::size_t da = parts.dim_a;
  const std::size_t db = parts.dim_b;
  if (!m.is_square() || m.rows() != da * db) {
    throw std::invalid_argument("partial_trace_a: bipartition does not match dimension");
  }
  ComplexMatrix out(db, db);
  for (std::size_t b = 0; b < db; ++b) {
    for (std::size_t b2 = 0; b2 < db; ++b2) {
      Complex acc{0.0, 0.0};
      for (std::size_t a = 0; a < da; ++a) acc += m(a * db + b, a * db + b2);
      out(b, b2) = acc;
    }
  }
  return out;
}

}  // namespace hqr
