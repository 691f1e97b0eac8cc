#pragma once

// Overdampedness: the exact definiteness interval, sufficient modal
// certificates, real eigenvalue intervals for certified systems and the
// relative-perturbation envelope for modally damped ones.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cassini/modal.hpp"

namespace cassini {

/// Open interval of μ < 0 where μ²M + μC + K is negative definite.
struct DefinitenessInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  bool contains(double mu) const noexcept { return !empty && mu > lo && mu < hi; }
};

/// Minimizes the convex f(μ) = λmax(μ²M + μC + K) by golden section on
/// [−2‖C‖/λmin(M), 0] and brackets both roots to tol·(1 + |μ|).
DefinitenessInterval exact_definiteness_interval(const DampedSystem& sys,
                                                 double tol = kDefaultRtol);

enum class CertificateVariant { Norm, Gershgorin };

std::string_view variant_name(CertificateVariant v);

struct OverdampedCertificate {
  CertificateVariant variant = CertificateVariant::Norm;
  Vector deltas;  ///< Δ_j = (d_jj − e_j)² − 4ω_j², e_j = ‖D′‖ or r_j
  double p_minus = 0.0;
  double p_plus = 0.0;
};

enum class RefusalReason {
  NonPositiveDelta,    ///< some Δ_j ≤ 0
  EmptyInterval,       ///< p₋ ≥ p₊
  NonNegativeInterval  ///< p₊ ≥ 0: d_jj − e_j < 0 makes the roots positive
};

struct CertificateRefusal {
  CertificateVariant variant = CertificateVariant::Norm;
  RefusalReason reason = RefusalReason::NonPositiveDelta;
  std::optional<Index> mode;  ///< first mode with Δ_j ≤ 0
  Vector deltas;
  std::string message;
};

using CertificateResult = std::variant<OverdampedCertificate, CertificateRefusal>;

/// The split must be the diagonal one. A refusal does not mean the system is
/// not overdamped.
CertificateResult sufficient_certificate(const ModalForm& form, const ModalSplit& split,
                                         CertificateVariant variant);

struct ModeIntervals {
  double neg_lo = 0.0;  ///< μ₋₋
  double neg_hi = 0.0;  ///< μ₋₊
  double pos_lo = 0.0;  ///< μ₊₋
  double pos_hi = 0.0;  ///< μ₊₊
};

struct IntervalBounds {
  CertificateVariant variant = CertificateVariant::Norm;
  std::vector<ModeIntervals> modes;
  double p_minus = 0.0;
  double p_plus = 0.0;

  bool in_negative_group(double lambda, double slack = 0.0) const;
  bool in_positive_group(double lambda, double slack = 0.0) const;
};

/// Throws CertificateMissing unless the matching certificate succeeds.
IntervalBounds eigenvalue_intervals(const ModalForm& form, const ModalSplit& split,
                                    CertificateVariant variant);

struct DuffinValues {
  double plus = 0.0;   ///< (−c + √(c² − 4mk)) / 2m
  double minus = 0.0;  ///< (−c − √(c² − 4mk)) / 2m
};

/// Undefined (nullopt) when c² < 4mk. Throws InvalidInput for x = 0.
std::optional<DuffinValues> duffin_values(const DampedSystem& sys, const Vector& x);

struct MinDamping {
  double value = 0.0;  ///< d = min_x xᵀCx / (2√(xᵀMx·xᵀKx))
  bool overdamped = false;  ///< d > 1
};

/// Bisection on γ: d > γ iff (M, C/γ, K) is overdamped.
MinDamping min_damping_d(const DampedSystem& sys, double tol = 1e-10);

struct EtaEnvelope {
  double epsilon = 0.0;
  double eta_low = 1.0;   ///< (1 − ε)/(1 + ε)
  double eta_high = 1.0;  ///< (1 + ε)/(1 − ε)
  // Each sequence ascending; the k-th perturbed eigenvalue of a group lies in
  // [lower_k, upper_k].
  Vector plus_lower;
  Vector plus_upper;
  Vector minus_lower;
  Vector minus_upper;
};

/// Per-mode roots (−d_jj η ± √(d_jj²η² − 4ω_j²))/2. Requires D diagonal
/// and ε < (d − 1)/(d + 1); throws EpsilonTooLarge otherwise.
EtaEnvelope eta_envelope(const ModalForm& form, double epsilon);

}  // namespace cassini
