#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seesaw/dynamics.hpp"

namespace seesaw {

/// Shortest text that round-trips the double exactly ("%.17g").
std::string format_double(double v);

/// Git blob object id (SHA-1 over "blob <size>\0" + content), lowercase hex.
std::string git_blob_sha1(std::string_view content);

/// Table plus the self-describing header written before it.
///
/// Layout: "# key = value" metadata lines (seed, content hash, free
/// metadata), "#@ key = value" config echo lines, one column-name row, then
/// data rows. The content hash covers the column-name row and data rows.
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::pair<std::string, std::string>> meta;
};

std::string render_csv(const CsvTable& table, std::string_view config_echo, std::uint64_t seed);
std::string render_csv(const TimeSeries& ts, std::string_view config_echo, std::uint64_t seed);

/// Writes atomically enough for batch use (temp file then rename).
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

/// Parses a CSV produced by render_csv. Throws ValidationError on malformed
/// input.
struct ParsedCsv {
  CsvTable table;
  std::string config;  // "#@" lines, prefix stripped
  std::string content_hash;
  std::string recomputed_hash;
};
ParsedCsv parse_csv(std::string_view text);

/// The "#@" config echo embedded in an artifact.
std::string embedded_config(std::string_view csv_text);

/// Matrix CSV: first row is the column grid, first column the row grid.
std::string render_matrix_csv(std::string_view corner, std::span<const double> row_grid,
                              std::span<const double> col_grid, std::span<const double> values_row_major,
                              const std::vector<std::pair<std::string, std::string>>& meta,
                              std::string_view config_echo, std::uint64_t seed);

}  // namespace seesaw
