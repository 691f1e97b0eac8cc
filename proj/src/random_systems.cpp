#include "cassini/random_systems.hpp"

#include "cassini/overdamped.hpp"

namespace cassini {

Matrix normal_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix a(rows, cols);
  // column-major fill, explicit order so output is stable across Eigen versions
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      a(i, j) = normal(rng);
    }
  }
  return a;
}

DampedSystem random_system(std::mt19937_64& rng, const GenOptions& options) {
  const Index n = options.n;
  if (n < 1) {
    throw Error(ErrorKind::InvalidInput, "system order must be at least 1");
  }
  if (!(options.damping_scale >= 0.0)) {
    throw Error(ErrorKind::InvalidInput, "damping scale must be nonnegative");
  }
  const Matrix a = normal_matrix(rng, n, n);
  const Matrix ak = normal_matrix(rng, n, n);
  const Matrix b = normal_matrix(rng, n, n);
  const Matrix shift = static_cast<double>(n) * Matrix::Identity(n, n);
  const SymMatrix m(Matrix(a * a.transpose() + shift), "M");
  const SymMatrix k(Matrix(ak * ak.transpose() + shift), "K");
  const Matrix bbt = b * b.transpose();
  double gamma = options.damping_scale;
  if (options.overdamped && !(gamma > 0.0)) {
    gamma = 1.0;
  }
  DampedSystem sys(m, SymMatrix(Matrix(gamma * bbt), "C"), k);
  if (!options.overdamped) {
    return sys;
  }
  for (int i = 0; i < 200; ++i) {
    if (!exact_definiteness_interval(sys).empty) {
      return sys;
    }
    gamma *= 2.0;
    sys = DampedSystem(m, SymMatrix(Matrix(gamma * bbt), "C"), k);
  }
  throw Error(ErrorKind::NoConvergence, "could not reach an overdamped system by scaling C");
}

}  // namespace cassini
