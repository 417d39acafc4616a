#include "elion/app/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "elion/errors.hpp"

namespace elion::app {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 12);
  std::string s(buf.data(), res.ptr);
  if (s == "-0") return "0";
  return s;
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header.size()) {
    throw std::logic_error("CsvTable: row width does not match header");
  }
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string RunManifest::serialize() const {
  nlohmann::json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["constant_set_version"] = constant_set_version;
  j["output_checksum"] = output_checksum;
  j["output_file"] = output_file;
  return j.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ELION_OUTPUT_DIR"); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::filesystem::path manifest_path(const std::filesystem::path& csv) {
  return csv.string() + ".manifest.json";
}

RunManifest emit(const std::filesystem::path& csv_path, const CsvTable& table,
                 RunManifest manifest) {
  const std::string csv = table.render();
  manifest.output_checksum = sha256_hex(csv);
  manifest.output_file = csv_path.filename().string();
  write_atomic(csv_path, csv);
  write_atomic(manifest_path(csv_path), manifest.serialize());
  return manifest;
}

}  // namespace elion::app
