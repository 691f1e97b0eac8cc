#pragma once

// Generators and small oracles shared by the unit tests and the acceptance
// binary.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cassini/modal.hpp"
#include "cassini/overdamped.hpp"
#include "cassini/random_systems.hpp"
#include "cassini/regions.hpp"
#include "cassini/verify.hpp"

namespace cassini::testing {

inline Matrix random_psd(std::mt19937_64& rng, Index n, Index rank = -1) {
  const Matrix b = normal_matrix(rng, n, rank < 0 ? n : rank);
  return b * b.transpose();
}

inline Matrix random_orthogonal(std::mt19937_64& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(normal_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline Vector sorted_frequencies(std::mt19937_64& rng, Index n, double lo = 0.5, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector w(n);
  for (Index i = 0; i < n; ++i) {
    w(i) = u(rng);
  }
  std::sort(w.begin(), w.end());
  return w;
}

/// A general random system in its modal form.
inline ModalForm random_form(std::mt19937_64& rng, Index n, double damping_scale = 1.0) {
  return to_modal(random_system(rng, {n, damping_scale, false}));
}

/// Frequencies in a few tight clusters (relative spread below `spread`).
inline ModalForm clustered_form(std::mt19937_64& rng, Index n, double spread) {
  std::uniform_int_distribution<int> groups(1, static_cast<int>(std::max<Index>(1, n / 2)));
  const int s = groups(rng);
  const Vector centers = sorted_frequencies(rng, s, 0.5, 3.0);
  std::uniform_real_distribution<double> jitter(0.0, spread);
  std::uniform_int_distribution<int> pick(0, s - 1);
  Vector w(n);
  for (Index i = 0; i < n; ++i) {
    w(i) = centers(pick(rng)) * (1.0 + jitter(rng));
  }
  std::sort(w.begin(), w.end());
  return modal_form_from(w, SymMatrix(Matrix(0.3 * random_psd(rng, n)), "D"));
}

/// ‖D‖ ≤ 0.2·min ω.
inline ModalForm lightly_damped_form(std::mt19937_64& rng, Index n) {
  const Vector w = sorted_frequencies(rng, n, 0.5, 3.0);
  Matrix d = random_psd(rng, n);
  std::uniform_real_distribution<double> frac(0.02, 0.2);
  d *= frac(rng) * w(0) / spectral_norm(d);
  return modal_form_from(w, SymMatrix(d, "D"));
}

/// Strong diagonal damping plus a small PSD coupling: usually certified.
inline ModalForm near_modal_overdamped_form(std::mt19937_64& rng, Index n) {
  const Vector w = sorted_frequencies(rng, n, 0.5, 2.0);
  std::uniform_real_distribution<double> theta(2.0, 6.0);
  std::uniform_real_distribution<double> couple(0.0, 0.3);
  Matrix d = random_psd(rng, n);
  d *= couple(rng) / std::max(1e-12, spectral_norm(d));
  for (Index j = 0; j < n; ++j) {
    d(j, j) += 2.0 * theta(rng) * w(j);
  }
  return modal_form_from(w, SymMatrix(d, "D"));
}

/// Modally damped and overdamped: D diagonal with every θ_j > 1.
inline ModalForm modal_overdamped_form(std::mt19937_64& rng, Index n, double theta_min = 1.5) {
  const Vector w = sorted_frequencies(rng, n, 0.5, 2.0);
  std::uniform_real_distribution<double> theta(theta_min, theta_min + 3.0);
  Vector d(n);
  for (Index j = 0; j < n; ++j) {
    d(j) = 2.0 * theta(rng) * w(j);
  }
  return modal_form_from(w, SymMatrix::diagonal(d));
}

/// Real parts of an overdamped spectrum, ascending.
inline std::vector<double> real_spectrum(const DampedSystem& sys) {
  const Index n = sys.order();
  const Matrix linv = cholesky(sys.mass()).inverse();
  const Matrix c = linv * sys.damping().matrix() * linv.transpose();
  const Matrix k = linv * sys.stiffness().matrix() * linv.transpose();
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = Matrix::Identity(n, n);
  a.bottomLeftCorner(n, n) = -k;
  a.bottomRightCorner(n, n) = -c;
  std::vector<double> out;
  for (Complex z : complex_eig(a)) {
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum over unit vectors of xᵀCx / (2√(xᵀMx·xᵀKx)) by dense sampling.
inline double sampled_min_damping(const DampedSystem& sys, std::mt19937_64& rng, int samples) {
  const Index n = sys.order();
  std::normal_distribution<double> g;
  double best = std::numeric_limits<double>::infinity();
  const auto ratio = [&](const Vector& x) {
    const double m = x.dot(sys.mass().matrix() * x);
    const double c = x.dot(sys.damping().matrix() * x);
    const double k = x.dot(sys.stiffness().matrix() * x);
    return c / (2.0 * std::sqrt(m * k));
  };
  for (int s = 0; s < samples; ++s) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) {
      x(i) = g(rng);
    }
    best = std::min(best, ratio(x));
  }
  return best;
}

}  // namespace cassini::testing
