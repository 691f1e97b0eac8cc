#pragma once

// System files: {"n": int, "M": [...], "C": [...], "K": [...]} with row-major
// entries, plus a reader for Matrix Market array/coordinate real matrices.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cassini/matdense.hpp"

namespace cassini {

DampedSystem parse_system(std::string_view text);
DampedSystem load_system(const std::filesystem::path& path);

/// Serialized text; every entry is written with 17 significant digits so a
/// parse of the result reproduces the matrices bit for bit.
std::string system_to_json(const DampedSystem& system);
void save_system(const DampedSystem& system, const std::filesystem::path& path);

/// Reads a real `%%MatrixMarket matrix {array|coordinate} real
/// {general|symmetric}` document into a symmetric matrix.
SymMatrix read_matrix_market(std::istream& in, std::string_view name = "matrix");
SymMatrix read_matrix_market_file(const std::filesystem::path& path);

/// Shortest "%.17g" rendering used across text reports.
std::string format_double(double value);

}  // namespace cassini
