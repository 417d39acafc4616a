#pragma once

// CSV tables, run manifests and atomic file output for the command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace elion::app {

// Shortest round-trip text at 12 significant digits, "C" locale, -0 -> 0.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  // Comma-separated, LF line endings, header first.
  std::string render() const;
};

std::string sha256_hex(std::string_view bytes);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string constant_set_version;
  std::string output_checksum;
  std::string output_file;

  // JSON with sorted keys and a trailing newline.
  std::string serialize() const;
};

// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

// Relative paths are placed under $ELION_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& out);

std::filesystem::path manifest_path(const std::filesystem::path& csv);

// Renders the table, fills in checksum and file name, writes both files.
RunManifest emit(const std::filesystem::path& csv_path, const CsvTable& table,
                 RunManifest manifest);

}  // namespace elion::app
