#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppstat::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Round-trip-exact decimal rendering ("%.17g").
std::string format_double(double v);

/// FNV-1a hash (config fingerprints in CSV metadata).
std::uint64_t fnv1a(const std::string& s);

/// Write content to a temp file in the target directory, then rename onto
/// path. A crash mid-write never leaves a partial file at path.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// Accumulates a CSV document: '#'-prefixed metadata lines, a header row,
/// then data rows. Everything ends up in one atomic_write_text call.
class CsvDocument {
 public:
  void add_metadata(const std::string& key, const std::string& value);
  void set_header(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  const std::string& body() const { return body_; }
  std::string text() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string meta_;
  std::string header_;
  std::string body_;
  std::size_t columns_ = 0;
};

}  // namespace ppstat::io
