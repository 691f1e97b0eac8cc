#pragma once

// Inclusion-region primitives and the constructors that turn a modal split
// into a union of them.

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cassini/modal.hpp"

namespace cassini {

/// {λ : |λ − λ₊||λ − λ₋| ≤ |λ|·r + q}. q = 0 gives a quasi Cassini oval,
/// q > 0 the modified variant.
struct QuasiOval {
  Complex focus_plus;
  Complex focus_minus;
  double r = 0.0;
  double q = 0.0;
};

/// {λ : |λ − center| ≤ radius}.
struct Disk {
  Complex center;
  double radius = 0.0;
};

/// {λ : Π_i |λ − foci_i| ≤ bound·|λ|²} with foci (λ₊ᵖ, λ₋ᵖ, λ₊ᵠ, λ₋ᵠ).
struct DoubleOval {
  std::array<Complex, 4> foci;
  double bound = 0.0;
};

using Primitive = std::variant<QuasiOval, Disk, DoubleOval>;

enum class Method {
  UndampedDiskNorm,
  UndampedDiskColsum,
  UndampedOvalNorm,
  UndampedOvalRel,
  UndampedOvalColsum,
  UndampedOvalRelsum,
  ModalDiskNorm,
  ModalDiskRowsum,
  ModalOvalNorm,
  ModalOvalRowsum,
  ModalDiskApprox,
  Brauer,
  ModifiedOval,
};

inline constexpr std::array kAllMethods = {
    Method::UndampedDiskNorm, Method::UndampedDiskColsum, Method::UndampedOvalNorm,
    Method::UndampedOvalRel,  Method::UndampedOvalColsum, Method::UndampedOvalRelsum,
    Method::ModalDiskNorm,    Method::ModalDiskRowsum,    Method::ModalOvalNorm,
    Method::ModalOvalRowsum,  Method::ModalDiskApprox,    Method::Brauer,
    Method::ModifiedOval,
};

/// Upper-case tag, e.g. "MODAL_OVAL_NORM".
std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Everything except MODAL_DISK_APPROX is a proven inclusion.
bool is_rigorous(Method method);

/// Methods whose radii scale with eigenvector conditioning and are undefined
/// at critical damping.
bool is_kappa_based(Method method);

struct RegionUnion {
  Method method = Method::ModalOvalNorm;
  bool rigorous = true;
  std::vector<Primitive> primitives;
  /// Modes that generated each primitive (one index, or the pair p, q).
  std::vector<std::vector<Index>> mode_labels;
};

struct BuildOptions {
  /// Replaces every per-mode extension (‖D‖, ‖D′‖, R_j, r_j, ...) before
  /// κ scaling. Used to reproduce fixed-extension figures.
  std::optional<double> extension_override;
};

/// UNDAMPED_* methods use the unrotated modal damping and the true
/// frequencies; MODAL_*, BRAUER and MODIFIED_OVAL use the split's rotated
/// diagonal and block frequencies. Throws CriticalModePresent for κ-based
/// methods when a mode is critical.
RegionUnion build_regions(const ModalForm& form, const ModalSplit& split,
                          const std::vector<ModeFocus>& foci, Method method,
                          const BuildOptions& options = {});

/// RHS − LHS of the membership inequality; nonnegative exactly on members.
double membership_slack(const Primitive& p, Complex lambda);

/// Exact predicate, no tolerance.
bool contains(const Primitive& p, Complex lambda);
bool contains(const RegionUnion& u, Complex lambda);

/// Slack scaled to be comparable across magnitudes: quasi ovals and disks by
/// (1 + |λ|²), double ovals (degree four) by (1 + |λ|²)².
double normalized_slack(const Primitive& p, Complex lambda);

/// True when the primitive is a finite point set (zero extensions).
bool is_degenerate(const Primitive& p);

/// Points that always belong to the primitive (foci or center).
std::vector<Complex> anchor_points(const Primitive& p);

struct Box {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  double width() const noexcept { return xmax - xmin; }
  double height() const noexcept { return ymax - ymin; }
  bool contains(Complex z) const noexcept {
    return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
  }
  Box united(const Box& o) const;
  Box padded(double fraction) const;
};

/// Axis-aligned box containing every member point.
Box bounding_box(const Primitive& p);
Box bounding_box(const RegionUnion& u);

/// |λ| bound for a (modified) quasi Cassini oval:
/// ((a+b+r) + √((a+b+r)² − 4·max(0, ab − q)))/2 with a, b the focus moduli.
double oval_modulus_bound(const QuasiOval& oval);

}  // namespace cassini
