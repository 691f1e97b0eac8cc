#include "cassini/modal.hpp"

#include <cmath>
#include <limits>

namespace cassini {

ModalForm to_modal(const DampedSystem& system) {
  GenEig eig = gen_sym_def_eig(system.stiffness(), system.mass());
  const Matrix& phi = eig.phi;
  const Matrix d = phi.transpose() * system.damping().matrix() * phi;
  return {phi, eig.omega_sq.cwiseSqrt(), SymMatrix(0.5 * (d + d.transpose()), "D")};
}

ModalForm modal_form_from(const Vector& omega, const SymMatrix& damping) {
  if (omega.size() != damping.order() || omega.size() < 1) {
    throw Error(ErrorKind::InvalidInput, "frequency count must match the damping order");
  }
  for (Index j = 0; j < omega.size(); ++j) {
    if (!(omega(j) > 0.0) || (j > 0 && omega(j) < omega(j - 1))) {
      throw Error(ErrorKind::InvalidInput, "frequencies must be positive and ascending",
                  static_cast<std::size_t>(j));
    }
  }
  return {Matrix::Identity(omega.size(), omega.size()), omega, damping};
}

DampedSystem modal_system(const ModalForm& form) {
  const Index n = form.order();
  return DampedSystem(SymMatrix::identity(n), form.damping,
                      SymMatrix::diagonal(form.omega.cwiseAbs2()));
}

bool is_modally_damped(const DampedSystem& system, double tol) {
  const Matrix& m = system.mass().matrix();
  const Matrix& c = system.damping().matrix();
  const Matrix& k = system.stiffness().matrix();
  const Eigen::LLT<Matrix> k_llt(k);
  const Matrix k_inv_m = k_llt.solve(m);
  const Matrix k_inv_c = k_llt.solve(c);
  const Matrix lhs = c * k_inv_m;
  const Matrix rhs = m * k_inv_c;
  const Matrix k_inv = k_llt.solve(Matrix::Identity(k.rows(), k.cols()));
  const double scale = spectral_norm(c) * spectral_norm(k_inv) * spectral_norm(m);
  return spectral_norm(Matrix(lhs - rhs)) <= tol * scale;
}

Partition singleton_partition(Index n) {
  Partition p;
  p.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    p.push_back({i, 1});
  }
  return p;
}

Partition cluster_frequencies(const Vector& omega, double reltol) {
  Partition p;
  const Index n = omega.size();
  Index begin = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || omega(i) - omega(i - 1) > reltol * omega(i - 1)) {
      p.push_back({begin, i - begin});
      begin = i;
    }
  }
  return p;
}

Vector block_mean_frequencies(const Vector& omega, const Partition& partition) {
  Vector out(omega.size());
  for (const Block& b : partition) {
    const double mean = omega.segment(b.begin, b.size).mean();
    out.segment(b.begin, b.size).setConstant(mean);
  }
  return out;
}

Matrix off_block_part(const Matrix& h, const Partition& partition) {
  Matrix out = h;
  for (const Block& b : partition) {
    out.block(b.begin, b.begin, b.size, b.size).setZero();
  }
  return out;
}

namespace {

void check_partition(const Partition& partition, Index n) {
  Index next = 0;
  for (const Block& b : partition) {
    if (b.begin != next || b.size < 1) {
      throw Error(ErrorKind::InvalidInput, "partition blocks must be contiguous and nonempty");
    }
    next = b.end();
  }
  if (next != n) {
    throw Error(ErrorKind::InvalidInput, "partition does not cover all indices");
  }
}

ModalSplit split_over(const ModalForm& form, const Partition& partition, SplitMode mode) {
  const Index n = form.order();
  check_partition(partition, n);
  const Matrix& d = form.damping.matrix();

  Matrix rotation = Matrix::Identity(n, n);
  Vector d0_diag(n);
  for (const Block& b : partition) {
    if (b.size == 1) {
      d0_diag(b.begin) = d(b.begin, b.begin);
      continue;
    }
    const SymEig eig =
        sym_eig(SymMatrix(Matrix(d.block(b.begin, b.begin, b.size, b.size))));
    rotation.block(b.begin, b.begin, b.size, b.size) = eig.vectors;
    d0_diag.segment(b.begin, b.size) = eig.values;
  }

  Matrix rotated = rotation.transpose() * d * rotation;
  rotated = 0.5 * (rotated + rotated.transpose());
  const Matrix dprime = off_block_part(rotated, partition);

  ModalSplit split;
  split.mode = mode;
  split.partition = partition;
  split.rotation = std::move(rotation);
  split.block_omega = block_mean_frequencies(form.omega, partition);
  split.d0 = SymMatrix::diagonal(d0_diag);
  split.dprime = SymMatrix(dprime, "D'");
  split.rotated = SymMatrix(Matrix(split.d0.matrix() + dprime), "D");
  split.dprime_norm = spectral_norm(dprime);
  split.offdiag_sums = dprime.cwiseAbs().rowwise().sum();
  split.z_norm = (form.omega.cwiseAbs2() - split.block_omega.cwiseAbs2()).cwiseAbs().maxCoeff();
  return split;
}

}  // namespace

ModalSplit modal_split(const ModalForm& form, SplitMode mode, double reltol) {
  const Partition partition = mode == SplitMode::Diagonal
                                  ? singleton_partition(form.order())
                                  : cluster_frequencies(form.omega, reltol);
  return split_over(form, partition, mode);
}

ModalSplit modal_split(const ModalForm& form, const Partition& partition) {
  return split_over(form, partition, SplitMode::Maximal);
}

ProportionalFit proportional_fit(const ModalForm& form, const std::optional<SymMatrix>& weight) {
  const Index n = form.order();
  const Matrix w = weight ? weight->matrix() : Matrix::Identity(n, n);
  if (w.rows() != n) {
    throw Error(ErrorKind::InvalidInput, "weight order must match the system order");
  }
  const Matrix& d = form.damping.matrix();
  const Vector lambda = form.omega.cwiseAbs2();
  const auto lam = lambda.asDiagonal();

  // Stationarity of Tr[(D − αI − βΛ) W (D − αI − βΛ)] in α and β.
  const double a11 = w.trace();
  const double a12 = (w * lam).trace();
  const double a22 = (lam * w * lam).trace();
  const double b1 = (w * d).trace();
  const double b2 = (lam * w * d).trace();
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-12 * std::abs(a11 * a22))) {
    throw Error(ErrorKind::SingularFit,
                "identity and frequency matrix are proportional; the fit is not unique");
  }
  ProportionalFit fit;
  fit.alpha = (a22 * b1 - a12 * b2) / det;
  fit.beta = (a11 * b2 - a12 * b1) / det;
  Matrix residual = d;
  residual.diagonal() -= (fit.alpha * Vector::Ones(n) + fit.beta * lambda);
  fit.residual_norm = spectral_norm(residual);
  fit.residual_frobenius = residual.norm();
  return fit;
}

ModeFocus focus_for(double damping, double omega) {
  ModeFocus f;
  f.damping = damping;
  f.omega = omega;
  f.theta = damping / (2.0 * omega);
  const double disc = damping * damping - 4.0 * omega * omega;
  if (disc >= 0.0) {
    // λ₋ first, λ₊ = ω²/λ₋ avoids cancellation for heavy damping
    const double root = std::sqrt(disc);
    const double minus = (-damping - root) / 2.0;
    f.minus = minus;
    f.plus = minus != 0.0 ? omega * omega / minus : 0.0;
  } else {
    const double im = std::sqrt(-disc) / 2.0;
    f.plus = Complex(-damping / 2.0, im);
    f.minus = Complex(-damping / 2.0, -im);
  }
  f.critical = std::abs(f.theta - 1.0) <= kCriticalTol;
  f.kappa = f.critical ? std::numeric_limits<double>::infinity()
                       : std::sqrt((1.0 + f.theta) / std::abs(1.0 - f.theta));
  return f;
}

std::vector<ModeFocus> mode_foci(const ModalForm& form, const ModalSplit& split) {
  const Index n = form.order();
  if (split.d0.order() != n || split.block_omega.size() != n) {
    throw Error(ErrorKind::InvalidInput, "split does not belong to this modal form");
  }
  std::vector<ModeFocus> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    out.push_back(focus_for(split.d0(j, j), split.block_omega(j)));
  }
  return out;
}

Eigen::Matrix2cd eigenvector_matrix(const ModeFocus& focus) {
  if (focus.critical) {
    throw Error(ErrorKind::CriticalModePresent, "critically damped mode has no eigenbasis");
  }
  Eigen::Matrix2cd s;
  s << focus.omega, focus.omega, focus.plus, focus.minus;
  s.col(0).normalize();
  s.col(1).normalize();
  return s;
}

SpreadBounds spread_bounds(const SymMatrix& h, const Partition& partition) {
  check_partition(partition, h.order());
  const Vector eigs = sym_eigenvalues(h);
  const Index n = eigs.size();
  const Matrix offdiag = off_block_part(h.matrix(), partition);
  SpreadBounds out;
  out.spread = eigs(n - 1) - eigs(0);
  out.offdiag_eigenvalues = sym_eigenvalues(SymMatrix(offdiag));
  out.offdiag_norm = out.offdiag_eigenvalues.cwiseAbs().maxCoeff();
  out.lower = eigs.array() - eigs(n - 1);
  out.upper = eigs.array() - eigs(0);
  return out;
}

}  // namespace cassini
