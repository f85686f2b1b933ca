#include "ppstat/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace ppstat::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);  // ok if it already exists
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open temp file " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("rename failed for " + path.string());
  }
}

void CsvDocument::add_metadata(const std::string& key, const std::string& value) {
  meta_ += "# " + key + ": " + value + "\n";
}

void CsvDocument::set_header(std::vector<std::string> columns) {
  columns_ = columns.size();
  header_.clear();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) header_ += ',';
    header_ += columns[i];
  }
  header_ += '\n';
}

void CsvDocument::add_row(const std::vector<std::string>& cells) {
  if (columns_ != 0 && cells.size() != columns_)
    throw IoError("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

std::string CsvDocument::text() const { return meta_ + header_ + body_; }

void CsvDocument::write(const std::filesystem::path& path) const {
  atomic_write_text(path, text());
}

}  // namespace ppstat::io
