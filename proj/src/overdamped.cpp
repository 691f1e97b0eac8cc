#include "cassini/overdamped.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cassini {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Roots of μ² + bμ + c with b² ≥ 4c, ascending, without cancellation.
std::pair<double, double> real_roots(double b, double c) {
  const double disc = std::max(0.0, b * b - 4.0 * c);
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    return {0.0, 0.0};
  }
  const double r1 = q;
  const double r2 = c / q;
  return {std::min(r1, r2), std::max(r1, r2)};
}

struct Pencil {
  const Matrix& m;
  const Matrix& c;
  const Matrix& k;
  double cscale = 1.0;  // Q(μ) = μ²M + μC/cscale + K

  double lambda_max(double mu) const {
    const Matrix q = mu * mu * m + (mu / cscale) * c + k;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorKind::NoConvergence, "eigenvalues of the pencil did not converge");
    }
    return eig.eigenvalues().maxCoeff();
  }

  // Roundoff level of f(μ); values above −floor are not trusted as negative.
  double floor(double mu) const {
    const double scale = mu * mu * m.norm() + std::abs(mu) * c.norm() / cscale + k.norm();
    return 64.0 * kEps * static_cast<double>(m.rows()) * scale;
  }
};

struct Minimum {
  double lo = 0.0;  // bracket of the search
  double mu = 0.0;
  double value = 0.0;
  bool negative = false;
};

Minimum minimize(const Pencil& p) {
  Minimum out;
  const double mmin = Eigen::SelfAdjointEigenSolver<Matrix>(p.m, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
  const double cnorm = spectral_norm(p.c) / p.cscale;
  if (!(cnorm > 0.0)) {
    out.value = p.lambda_max(0.0);
    return out;
  }
  double a = -2.0 * cnorm / mmin;
  double b = 0.0;
  out.lo = a;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = p.lambda_max(x1);
  double f2 = p.lambda_max(x2);
  for (int it = 0; it < 300 && b - a > 4.0 * kEps * (1.0 + std::abs(a)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = p.lambda_max(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = p.lambda_max(x2);
    }
  }
  if (f1 <= f2) {
    out.mu = x1;
    out.value = f1;
  } else {
    out.mu = x2;
    out.value = f2;
  }
  out.negative = out.value < -p.floor(out.mu);
  return out;
}

// Sign change of f between `outside` (f > 0) and `inside` (f < 0).
double bisect_root(const Pencil& p, double outside, double inside, double tol) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (outside + inside);
    if (std::abs(outside - inside) <= tol * (1.0 + std::abs(mid))) {
      break;
    }
    if (p.lambda_max(mid) < 0.0) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return 0.5 * (outside + inside);
}

void require_diagonal_split(const ModalSplit& split) {
  if (split.mode != SplitMode::Diagonal ||
      split.partition.size() != static_cast<std::size_t>(split.d0.order())) {
    throw Error(ErrorKind::InvalidInput, "overdampedness certificates need the diagonal split");
  }
}

Vector extensions(const ModalSplit& split, CertificateVariant variant) {
  const Index n = split.d0.order();
  if (variant == CertificateVariant::Norm) {
    return Vector::Constant(n, split.dprime_norm);
  }
  return split.offdiag_sums;
}

}  // namespace

DefinitenessInterval exact_definiteness_interval(const DampedSystem& sys, double tol) {
  const Pencil p{sys.mass().matrix(), sys.damping().matrix(), sys.stiffness().matrix()};
  const Minimum min = minimize(p);
  DefinitenessInterval out;
  if (!min.negative) {
    return out;
  }
  out.lo = bisect_root(p, min.lo, min.mu, tol);
  out.hi = bisect_root(p, 0.0, min.mu, tol);
  out.empty = !(out.lo < out.hi);
  return out;
}

std::string_view variant_name(CertificateVariant v) {
  return v == CertificateVariant::Norm ? "norm" : "gershgorin";
}

CertificateResult sufficient_certificate(const ModalForm& form, const ModalSplit& split,
                                         CertificateVariant variant) {
  require_diagonal_split(split);
  const Index n = form.order();
  const Vector e = extensions(split, variant);
  Vector deltas(n);
  for (Index j = 0; j < n; ++j) {
    const double d = split.d0(j, j);
    const double w = form.omega(j);
    deltas(j) = (d - e(j)) * (d - e(j)) - 4.0 * w * w;
  }
  for (Index j = 0; j < n; ++j) {
    if (!(deltas(j) > 0.0)) {
      return CertificateRefusal{variant, RefusalReason::NonPositiveDelta, j, deltas,
                                "delta of mode " + std::to_string(j) + " is not positive"};
    }
  }
  double p_minus = -std::numeric_limits<double>::infinity();
  double p_plus = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    const double w = form.omega(j);
    const auto [lo, hi] = real_roots(split.d0(j, j) - e(j), w * w);
    p_minus = std::max(p_minus, lo);
    p_plus = std::min(p_plus, hi);
  }
  if (!(p_plus < 0.0)) {
    return CertificateRefusal{variant, RefusalReason::NonNegativeInterval, std::nullopt, deltas,
                              "certificate interval is not negative"};
  }
  if (!(p_minus < p_plus)) {
    return CertificateRefusal{variant, RefusalReason::EmptyInterval, std::nullopt, deltas,
                              "p_minus is not below p_plus"};
  }
  return OverdampedCertificate{variant, deltas, p_minus, p_plus};
}

bool IntervalBounds::in_negative_group(double lambda, double slack) const {
  return std::any_of(modes.begin(), modes.end(), [&](const ModeIntervals& m) {
    return lambda >= m.neg_lo - slack && lambda <= m.neg_hi + slack;
  });
}

bool IntervalBounds::in_positive_group(double lambda, double slack) const {
  return std::any_of(modes.begin(), modes.end(), [&](const ModeIntervals& m) {
    return lambda >= m.pos_lo - slack && lambda <= m.pos_hi + slack;
  });
}

IntervalBounds eigenvalue_intervals(const ModalForm& form, const ModalSplit& split,
                                    CertificateVariant variant) {
  const CertificateResult cert = sufficient_certificate(form, split, variant);
  if (const auto* refusal = std::get_if<CertificateRefusal>(&cert)) {
    throw Error(ErrorKind::CertificateMissing,
                std::string(variant_name(variant)) + " certificate refused: " + refusal->message,
                refusal->mode ? std::optional<std::size_t>(*refusal->mode) : std::nullopt);
  }
  const auto& ok = std::get<OverdampedCertificate>(cert);
  const Vector e = extensions(split, variant);
  IntervalBounds out;
  out.variant = variant;
  out.p_minus = ok.p_minus;
  out.p_plus = ok.p_plus;
  for (Index j = 0; j < form.order(); ++j) {
    const double d = split.d0(j, j);
    const double w2 = form.omega(j) * form.omega(j);
    const auto [outer_lo, outer_hi] = real_roots(d + e(j), w2);
    const auto [inner_lo, inner_hi] = real_roots(d - e(j), w2);
    out.modes.push_back({outer_lo, inner_lo, inner_hi, outer_hi});
  }
  return out;
}

std::optional<DuffinValues> duffin_values(const DampedSystem& sys, const Vector& x) {
  if (x.size() != sys.order()) {
    throw Error(ErrorKind::InvalidInput, "vector length must match the system order");
  }
  if (x.isZero(0.0)) {
    throw Error(ErrorKind::InvalidInput, "Duffin functionals need a nonzero vector");
  }
  const double m = x.dot(sys.mass().matrix() * x);
  const double c = x.dot(sys.damping().matrix() * x);
  const double k = x.dot(sys.stiffness().matrix() * x);
  const double disc = c * c - 4.0 * m * k;
  if (disc < 0.0) {
    return std::nullopt;
  }
  const double q = -0.5 * (c + std::sqrt(disc));
  return DuffinValues{k / q, q / m};
}

MinDamping min_damping_d(const DampedSystem& sys, double tol) {
  const Matrix& m = sys.mass().matrix();
  const Matrix& c = sys.damping().matrix();
  const Matrix& k = sys.stiffness().matrix();
  double hi = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < sys.order(); ++i) {
    hi = std::min(hi, c(i, i) / (2.0 * std::sqrt(m(i, i) * k(i, i))));
  }
  MinDamping out;
  if (!(hi > 0.0)) {
    return out;
  }
  double lo = 0.0;
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    const Pencil p{m, c, k, mid};
    if (minimize(p).negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.value = 0.5 * (lo + hi);
  out.overdamped = out.value > 1.0;
  return out;
}

EtaEnvelope eta_envelope(const ModalForm& form, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "epsilon must lie in [0, 1)");
  }
  const Matrix& dm = form.damping.matrix();
  const Index n = form.order();
  Matrix off = dm;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > 1e-8 * dm.cwiseAbs().maxCoeff()) {
    throw Error(ErrorKind::InvalidInput, "eta envelope needs a modally damped system");
  }
  const MinDamping d = min_damping_d(modal_system(form));
  if (!(d.value > 1.0) || !(epsilon < (d.value - 1.0) / (d.value + 1.0))) {
    throw Error(ErrorKind::EpsilonTooLarge,
                "epsilon " + std::to_string(epsilon) + " exceeds (d-1)/(d+1) with d = " +
                    std::to_string(d.value));
  }
  EtaEnvelope out;
  out.epsilon = epsilon;
  out.eta_low = (1.0 - epsilon) / (1.0 + epsilon);
  out.eta_high = (1.0 + epsilon) / (1.0 - epsilon);
  const auto roots_at = [&](double eta, Vector& plus, Vector& minus) {
    plus.resize(n);
    minus.resize(n);
    for (Index j = 0; j < n; ++j) {
      const auto [lo, hi] = real_roots(dm(j, j) * eta, form.omega(j) * form.omega(j));
      minus(j) = lo;
      plus(j) = hi;
    }
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
  };
  // λ⁺(η) rises with η, λ⁻(η) falls.
  roots_at(out.eta_low, out.plus_lower, out.minus_upper);
  roots_at(out.eta_high, out.plus_upper, out.minus_lower);
  return out;
}

}  // namespace cassini
