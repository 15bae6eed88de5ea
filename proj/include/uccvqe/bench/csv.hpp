#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uccvqe::bench {

inline constexpr double kKcalPerHartree = 627.509;

/// Header plus string cells. Rows must match the header width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column. Throws std::out_of_range when missing.
  std::size_t column(std::string_view name) const;
  const std::string& at(std::size_t row, std::string_view name) const;
};

/// Round-trip formatting: shortest representation that parses back to the
/// same double ("nan" for NaN).
std::string format_double(double x);

/// Parses a cell written by format_double; empty cells read as NaN.
double parse_double(std::string_view cell);

// RFC 4180 quoting: fields with a comma, quote or newline are quoted.
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Throws uccvqe::ParseError on ragged rows or unterminated quotes.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace uccvqe::bench
