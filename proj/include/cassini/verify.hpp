#pragma once

// Ground truth for every inclusion claim: the spectrum of the linearized
// quadratic problem, containment margins and Monte Carlo region comparison.

#include <cstdint>
#include <optional>
#include <vector>

#include "cassini/contour.hpp"
#include "cassini/regions.hpp"

namespace cassini {

enum class Layout { Block, Shuffled };

struct Linearization {
  Matrix a;
  Layout layout = Layout::Block;
};

/// Block: [[0, Ω], [−Ω, −D]]. Shuffled: the same matrix permuted so that each
/// mode owns the 2×2 diagonal block [[0, ω_j], [−ω_j, −d_jj]].
Linearization linearize(const ModalForm& form, Layout layout = Layout::Block);

struct Spectrum {
  std::vector<Complex> values;  ///< 2n eigenvalues, conjugate pairs adjacent
  std::vector<double> residuals;  ///< σ_min(λ²I + λD + Ω²)
};

Spectrum true_spectrum(const ModalForm& form);

/// Residual contract: σ_min ≤ 1e-8·(|λ|² + |λ|‖D‖ + ‖Ω‖²).
bool residuals_ok(const Spectrum& s, const ModalForm& form, double rtol = 1e-8);

/// Boundary tolerance on normalized margins.
inline constexpr double kContainmentTol = 1e-9;

struct InclusionEntry {
  Complex value;
  std::optional<Index> primitive;  ///< best primitive, none when outside all
  double margin = 0.0;  ///< max over primitives of the normalized slack
};

struct InclusionReport {
  Method method = Method::ModalOvalNorm;
  bool rigorous = true;
  std::vector<InclusionEntry> entries;
  bool all_contained = true;
  double worst_margin = 0.0;
  std::size_t violations = 0;
};

InclusionReport check_inclusion(const Spectrum& spectrum, const RegionUnion& u);

struct DominanceReport {
  double area_first = 0.0;
  double area_second = 0.0;
  std::size_t samples = 0;
  std::size_t in_first = 0;
  std::size_t in_second = 0;
  std::size_t first_not_second = 0;  ///< subset violations for first ⊆ second
  Box box;
};

inline constexpr std::size_t kDefaultSamples = 200000;

/// Uniform samples over the joint bounding box; point i is drawn from its own
/// seed so the result does not depend on evaluation order.
DominanceReport compare_regions(const RegionUnion& first, const RegionUnion& second,
                                std::size_t samples = kDefaultSamples, std::uint64_t seed = 1);

/// Eigenvalues per component; `unassigned` counts those outside every
/// component.
struct ComponentCounts {
  std::vector<std::size_t> per_component;
  std::size_t unassigned = 0;
};

ComponentCounts count_eigenvalues(const ComponentMap& map, const Spectrum& spectrum);

}  // namespace cassini
