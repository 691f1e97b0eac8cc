#pragma once

// SVG 1.1 figures of region unions with eigenvalue markers.

#include <filesystem>
#include <string>
#include <vector>

#include "cassini/contour.hpp"

namespace cassini {

/// One <path> per boundary polyline, a cross per eigenvalue, axes labeled Re
/// and Im. The viewBox is the joint bounding box padded 10%. Output depends
/// only on the arguments.
std::string render_svg(const std::vector<RegionUnion>& unions,
                       const std::vector<Complex>& eigenvalues,
                       int resolution = kDefaultResolution);

/// Throws Io when the file cannot be written.
void emit_svg(const std::vector<RegionUnion>& unions, const std::vector<Complex>& eigenvalues,
              const std::filesystem::path& path, int resolution = kDefaultResolution);

}  // namespace cassini
