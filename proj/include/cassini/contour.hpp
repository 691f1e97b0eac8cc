#pragma once

// Geometry of region primitives on a grid: boundary polylines by marching
// squares and connected components of a union by flood fill.

#include <vector>

#include "cassini/regions.hpp"

namespace cassini {

inline constexpr int kMinResolution = 32;
inline constexpr int kDefaultResolution = 512;

/// Closed polyline; the first point is repeated at the end.
using Polyline = std::vector<Complex>;

/// Zero set of g(λ) = −membership_slack(p, λ) on a resolution × resolution
/// grid over the primitive's bounding box (padded 5%). Degenerate primitives
/// yield no polylines.
std::vector<Polyline> boundary_polyline(const Primitive& p, int resolution);

struct Component {
  std::vector<Index> primitives;  ///< indices into RegionUnion::primitives
  std::vector<Index> modes;       ///< generating modes, ascending, unique
  /// Primitive anchor points (foci) inside the component, with multiplicity.
  std::size_t focus_count = 0;
  std::size_t cells = 0;
};

/// Labeled rasterization of a union (4-connected).
struct ComponentMap {
  Box box;
  int resolution = 0;
  std::vector<int> labels;  ///< row-major, −1 outside
  std::vector<Component> components;

  double cell_width() const { return box.width() / resolution; }
  double cell_height() const { return box.height() / resolution; }

  /// Component holding λ: its own cell if filled, otherwise the nearest filled
  /// cell within two cells. −1 if none.
  int component_at(Complex lambda) const;
};

/// A cell is filled when its center is a member of some primitive; cells
/// holding a focus are filled as well, since foci are always members. Throws
/// ResolutionTooCoarse when a non-degenerate primitive covers no cell center.
ComponentMap component_analysis(const RegionUnion& u, int resolution = kDefaultResolution);

}  // namespace cassini
