#include "fwave/csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fwave/error.hpp"

namespace fwave {

std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) {
    fail_numerical("CsvShape: row width " + std::to_string(cells.size()) +
                   " does not match header width " + std::to_string(header.size()));
  }
  rows.push_back(std::move(cells));
}

std::string Csv::str() const {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ",";
      out += r[i];
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) fail_config("OutputWrite: cannot create '" + p.parent_path().string() + "'");
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) fail_config("OutputWrite: cannot open '" + path + "'");
  out << text;
  out.close();
  if (!out) fail_config("OutputWrite: short write to '" + path + "'");
}

}  // namespace fwave
