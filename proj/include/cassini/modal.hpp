#pragma once

// Modal coordinates of a damped system and the modal approximations built on
// them.
//
// In modal coordinates the system reads λ²I + λD + Ω² with Ω = diag(ω) and
// D = ΦᵀCΦ. A modal split writes (a block-rotated copy of) D as D⁰ + D′ where
// D⁰ is diagonal and commutes with the frequencies, and D′ is the
// perturbation every inclusion region is sized by.

#include <optional>
#include <vector>

#include "cassini/matdense.hpp"

namespace cassini {

struct ModalForm {
  Matrix phi;        ///< ΦᵀMΦ = I, ΦᵀKΦ = diag(ω²)
  Vector omega;      ///< ascending, strictly positive
  SymMatrix damping;  ///< D = ΦᵀCΦ

  Index order() const noexcept { return omega.size(); }
};

ModalForm to_modal(const DampedSystem& system);

/// Builds a modal form directly from frequencies and a modal damping matrix
/// (Φ = I).
ModalForm modal_form_from(const Vector& omega, const SymMatrix& damping);

/// The system (I, D, diag(ω²)) that a modal form describes.
DampedSystem modal_system(const ModalForm& form);

/// CK⁻¹M = MK⁻¹C up to tol·‖C‖·‖K⁻¹‖·‖M‖.
bool is_modally_damped(const DampedSystem& system, double tol = kDefaultRtol);

/// Contiguous index range [begin, begin + size).
struct Block {
  Index begin = 0;
  Index size = 0;

  Index end() const noexcept { return begin + size; }
  bool operator==(const Block&) const = default;
};

using Partition = std::vector<Block>;

/// Singleton blocks {0}, {1}, ..., {n-1}.
Partition singleton_partition(Index n);

/// Groups ascending frequencies: ω_{i+1} joins the block of ω_i when
/// ω_{i+1} − ω_i ≤ reltol·ω_i.
Partition cluster_frequencies(const Vector& omega, double reltol);

/// Arithmetic mean of the frequencies of each block, expanded per index.
Vector block_mean_frequencies(const Vector& omega, const Partition& partition);

inline constexpr double kDefaultClusterTol = 1e-6;

enum class SplitMode { Diagonal, Maximal };

struct ModalSplit {
  SplitMode mode = SplitMode::Diagonal;
  Partition partition;
  /// Block-diagonal orthogonal U; the split describes UᵀDU.
  Matrix rotation;
  /// Per-index representative frequency ω⁰ (block mean).
  Vector block_omega;
  /// Diagonal approximation D⁰ (exactly diagonal).
  SymMatrix d0;
  /// Perturbation D′ = rotated − D⁰, zero inside every block.
  SymMatrix dprime;
  /// D⁰ + D′, i.e. UᵀDU up to roundoff inside the blocks.
  SymMatrix rotated;
  /// ‖D′‖ (spectral).
  double dprime_norm = 0.0;
  /// r_j = Σ_{k≠j} |D′_jk|.
  Vector offdiag_sums;
  /// ‖Ω² − (Ω⁰)²‖: zero unless a block holds unequal frequencies.
  double z_norm = 0.0;

  Vector d0_diagonal() const { return d0.matrix().diagonal(); }
};

/// Diagonal mode: D⁰ = diag(D). Maximal mode: blocks from
/// cluster_frequencies(reltol), each diagonal block of D diagonalized by its
/// own symmetric eigendecomposition.
ModalSplit modal_split(const ModalForm& form, SplitMode mode,
                       double reltol = kDefaultClusterTol);

/// Split over an explicit contiguous partition (blocks rotated to diagonal).
ModalSplit modal_split(const ModalForm& form, const Partition& partition);

struct ProportionalFit {
  double alpha = 0.0;
  double beta = 0.0;
  /// ‖D − αI − β·diag(ω²)‖ (spectral).
  double residual_norm = 0.0;
  /// Same residual in the Frobenius norm.
  double residual_frobenius = 0.0;
};

/// Rayleigh fit D ≈ αI + β·diag(ω²) minimizing Tr[(D−P)W(D−P)] with the
/// weight W given in modal coordinates (identity when absent). Throws
/// SingularFit when all frequencies coincide.
ProportionalFit proportional_fit(const ModalForm& form,
                                 const std::optional<SymMatrix>& weight = std::nullopt);

/// Threshold on |θ − 1| below which a mode counts as critically damped.
inline constexpr double kCriticalTol = 1e-12;

struct ModeFocus {
  Complex plus;   ///< (−d + √(d² − 4ω²))/2, upper half plane when complex
  Complex minus;  ///< (−d − √(d² − 4ω²))/2
  double damping = 0.0;  ///< d
  double omega = 0.0;    ///< ω
  double theta = 0.0;    ///< d / (2ω)
  /// Condition number of the column-equilibrated eigenvector matrix of
  /// [[0, ω], [−ω, −d]]: √((1+θ)/|1−θ|). Infinite at critical damping.
  double kappa = 1.0;
  bool critical = false;
};

/// Roots of λ² + dλ + ω² with conditioning data.
ModeFocus focus_for(double damping, double omega);

/// One focus pair per mode, from the split's diagonal and block frequencies.
std::vector<ModeFocus> mode_foci(const ModalForm& form, const ModalSplit& split);

/// Column-equilibrated eigenvector matrix S_j of [[0, ω], [−ω, −d]].
/// Throws CriticalModePresent when the mode is critical.
Eigen::Matrix2cd eigenvector_matrix(const ModeFocus& focus);

struct SpreadBounds {
  double spread = 0.0;         ///< λ_n(H) − λ_1(H)
  double offdiag_norm = 0.0;   ///< ‖H′‖
  Vector offdiag_eigenvalues;  ///< λ_k(H′), ascending
  Vector lower;                ///< λ_k(H) − λ_n(H)
  Vector upper;                ///< λ_k(H) − λ_1(H)
};

/// H′ is H with its partition's diagonal blocks removed.
SpreadBounds spread_bounds(const SymMatrix& h, const Partition& partition);

/// H with every diagonal block of the partition zeroed.
Matrix off_block_part(const Matrix& h, const Partition& partition);

}  // namespace cassini
