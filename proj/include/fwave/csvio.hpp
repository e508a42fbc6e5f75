#pragma once

#include <string>
#include <vector>

namespace fwave {

// %.17g: shortest fixed format that round-trips a double
std::string fmt_g17(double x);

// Minimal CSV assembly: comment lines, one header, string cells. Numeric
// cells go through fmt_g17 so reruns with equal inputs are byte-identical.
struct Csv {
  std::vector<std::string> comments;  // emitted as "# ..." lines up front
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> cells);  // size checked against header
  std::string str() const;
};

// Creates parent directories as needed; failures are Config errors since
// they trace back to the configured output location.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fwave
