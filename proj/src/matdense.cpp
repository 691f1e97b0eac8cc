#include "cassini/matdense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cassini {

SymMatrix::SymMatrix(const Matrix& m, std::string_view name) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " is not square (" + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ")");
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + " has non-finite entries");
  }
  const double norm = m.norm();
  const double asym = 0.5 * (m - m.transpose()).norm();
  if (asym > kSymmetryTol * norm) {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " is not symmetric (relative asymmetry " +
                    std::to_string(norm > 0 ? asym / norm : asym) + ")");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }

SymMatrix SymMatrix::identity(Index n) { return SymMatrix(Matrix::Identity(n, n)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix SymMatrix::from_row_major(Index n, std::span<const double> entries,
                                    std::string_view name) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidInput, "order must be positive");
  }
  if (static_cast<Index>(entries.size()) != n * n) {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " has " + std::to_string(entries.size()) +
                    " entries, expected " + std::to_string(n * n));
  }
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m(i, j) = entries[static_cast<std::size_t>(i * n + j)];
    }
  }
  return SymMatrix(m, name);
}

std::vector<double> SymMatrix::row_major() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_.size()));
  for (Index i = 0; i < m_.rows(); ++i) {
    for (Index j = 0; j < m_.cols(); ++j) {
      out.push_back(m_(i, j));
    }
  }
  return out;
}

namespace {

void require_positive_definite(const SymMatrix& s, std::string_view name) {
  try {
    (void)cholesky(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotPositiveDefinite,
                std::string(name) + " is not positive definite (pivot " +
                    std::to_string(e.index().value_or(0)) + ")",
                e.index());
  }
}

}  // namespace

DampedSystem::DampedSystem(SymMatrix mass, SymMatrix damping, SymMatrix stiffness)
    : mass_(std::move(mass)), damping_(std::move(damping)), stiffness_(std::move(stiffness)) {
  const Index n = mass_.order();
  if (n < 1) {
    throw Error(ErrorKind::InvalidInput, "system order must be positive");
  }
  if (damping_.order() != n || stiffness_.order() != n) {
    throw Error(ErrorKind::InvalidInput, "M, C and K must have equal orders");
  }
  require_positive_definite(mass_, "M");
  require_positive_definite(stiffness_, "K");
  const Vector c_eigs = sym_eigenvalues(damping_);
  const double c_norm = c_eigs.cwiseAbs().maxCoeff();
  if (c_eigs(0) < -kSemidefiniteTol * c_norm) {
    throw Error(ErrorKind::InvalidInput,
                "C is not positive semidefinite (min eigenvalue " + std::to_string(c_eigs(0)) +
                    ")");
  }
}

Matrix cholesky(const SymMatrix& s) {
  const Matrix& a = s.matrix();
  const Index n = a.rows();
  const double threshold =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * a.norm();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (Index k = 0; k < j; ++k) {
      pivot -= l(j, k) * l(j, k);
    }
    if (!(pivot > threshold)) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "non-positive pivot " + std::to_string(pivot) + " at index " +
                      std::to_string(j),
                  static_cast<std::size_t>(j));
    }
    const double diag = std::sqrt(pivot);
    l(j, j) = diag;
    for (Index i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (Index k = 0; k < j; ++k) {
        v -= l(i, k) * l(j, k);
      }
      l(i, j) = v / diag;
    }
  }
  return l;
}

SymEig sym_eig(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector sym_eigenvalues(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

GenEig gen_sym_def_eig(const SymMatrix& stiffness, const SymMatrix& mass) {
  if (stiffness.order() != mass.order()) {
    throw Error(ErrorKind::InvalidInput, "K and M must have equal orders");
  }
  const Matrix l = cholesky(mass);
  const auto tri = l.triangularView<Eigen::Lower>();
  // L⁻¹ K L⁻ᵀ
  Matrix reduced = tri.solve(stiffness.matrix());
  reduced = tri.solve(reduced.transpose()).transpose();
  const SymEig eig = sym_eig(SymMatrix(0.5 * (reduced + reduced.transpose())));
  for (Index j = 0; j < eig.values.size(); ++j) {
    if (!(eig.values(j) > 0.0)) {
      throw Error(ErrorKind::NonPositiveFrequency,
                  "squared frequency " + std::to_string(eig.values(j)) + " at mode " +
                      std::to_string(j),
                  static_cast<std::size_t>(j));
    }
  }
  Matrix phi = l.transpose().triangularView<Eigen::Upper>().solve(eig.vectors);
  return {eig.values, std::move(phi)};
}

std::vector<Complex> complex_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::InvalidInput, "complex_eig needs a square matrix");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "complex_eig input has non-finite entries");
  }
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "real Schur iteration did not converge");
  }
  const Eigen::VectorXcd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double smallest_singular_value(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

double max_relative_difference(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

}  // namespace cassini
