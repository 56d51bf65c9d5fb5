#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dcnewton/newton.hpp"

namespace dcnewton {

/// 17 significant digits, enough for a lossless round trip.
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Numeric CSV: optional header row, '#' comment lines and blank lines are
/// skipped. Throws std::invalid_argument naming the line on malformed input.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);

/// Columns a1..am,c in canonical order.
std::string coefficients_csv(const NewtonPolynomial& poly);

/// A polynomial bundle is a directory holding header.json
/// {m, num_coeffs, node_family, provenance}, grid.csv and coefficients.csv.
void write_bundle(const std::filesystem::path& dir, const NewtonPolynomial& poly);

/// Rebuilds the grid from grid.csv (axis i is read off the nodes at k e_i)
/// and checks that coefficients.csv lists the same indices in the same order.
NewtonPolynomial read_bundle(const std::filesystem::path& dir);

}  // namespace dcnewton
