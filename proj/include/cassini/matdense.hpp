#pragma once

// Dense real linear algebra kernels shared by every other module: symmetric
// matrices with enforced symmetry, the (M, C, K) damped system triple,
// Cholesky, symmetric and generalized symmetric-definite eigenproblems,
// general real eigenvalues and the spectral norm.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cassini/errors.hpp"

namespace cassini {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Relative tolerance used by all residual contracts unless overridden.
inline constexpr double kDefaultRtol = 1e-10;

/// Largest accepted relative asymmetry ‖S − Sᵀ‖_F / (2‖S‖_F) on input.
inline constexpr double kSymmetryTol = 1e-8;

/// Largest accepted relative negative eigenvalue of a damping matrix.
inline constexpr double kSemidefiniteTol = 1e-8;

/// Real symmetric matrix. Symmetry is exact: the constructor averages the
/// input with its transpose after rejecting anything visibly asymmetric.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Throws InvalidInput for non-square, non-finite or asymmetric input.
  explicit SymMatrix(const Matrix& m, std::string_view name = "matrix");

  static SymMatrix zero(Index n);
  static SymMatrix identity(Index n);
  static SymMatrix diagonal(const Vector& d);
  static SymMatrix from_row_major(Index n, std::span<const double> entries,
                                  std::string_view name = "matrix");

  Index order() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  /// Row-major copy of the entries.
  std::vector<double> row_major() const;

 private:
  Matrix m_;
};

/// The triple (M, C, K): mass, damping, stiffness.
///
/// Construction validates the definiteness requirements: M and K positive
/// definite, C positive semidefinite up to kSemidefiniteTol·‖C‖. C is never
/// clipped. Errors name the offending matrix.
class DampedSystem {
 public:
  DampedSystem(SymMatrix mass, SymMatrix damping, SymMatrix stiffness);

  Index order() const noexcept { return mass_.order(); }
  const SymMatrix& mass() const noexcept { return mass_; }
  const SymMatrix& damping() const noexcept { return damping_; }
  const SymMatrix& stiffness() const noexcept { return stiffness_; }

 private:
  SymMatrix mass_;
  SymMatrix damping_;
  SymMatrix stiffness_;
};

/// Lower-triangular L with L·Lᵀ = S. Throws NotPositiveDefinite (with the
/// zero-based pivot index) when a pivot falls below n·ε·‖S‖.
Matrix cholesky(const SymMatrix& s);

struct SymEig {
  Vector values;   ///< ascending
  Matrix vectors;  ///< orthonormal columns, vectors.col(k) ↔ values(k)
};

SymEig sym_eig(const SymMatrix& s);

/// Eigenvalues only, ascending.
Vector sym_eigenvalues(const SymMatrix& s);

struct GenEig {
  Vector omega_sq;  ///< ascending, strictly positive
  Matrix phi;       ///< ΦᵀMΦ = I, ΦᵀKΦ = diag(omega_sq)
};

/// Generalized symmetric-definite problem K φ = ω² M φ via Cholesky of M.
GenEig gen_sym_def_eig(const SymMatrix& stiffness, const SymMatrix& mass);

/// All eigenvalues of a general real square matrix.
std::vector<Complex> complex_eig(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);
double spectral_norm(const ComplexMatrix& a);

/// Smallest singular value.
double smallest_singular_value(const ComplexMatrix& a);

/// Largest absolute difference between two matrices, scaled by (1 + max|b|).
double max_relative_difference(const Matrix& a, const Matrix& b);

}  // namespace cassini
