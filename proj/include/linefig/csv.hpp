#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace linefig::csv {

/// Splits one CSV line on commas. Fields are trimmed of surrounding spaces;
/// quoting is not supported (identifiers in this project never contain commas).
std::vector<std::string> split(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

/// Line reader that tracks 1-based line numbers, strips a trailing CR and
/// skips blank lines and '#' comments.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(std::string& line);
  [[nodiscard]] std::size_t line_number() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Fixed-point representation with `digits` decimals (used for SVG output).
std::string format_fixed(double v, int digits);

double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);

}  // namespace linefig::csv
