#pragma once

// CSV rendering: '.' decimal separator, 9 significant digits, independent of
// the process locale.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dq/latency.hpp"

namespace dq::csv {

inline std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

inline double parse_number(std::string_view field) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("not a number: " + std::string(field));
  return value;
}

inline std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    auto comma = line.find(',', begin);
    out.emplace_back(line.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin));
    if (comma == std::string_view::npos) return out;
    begin = comma + 1;
  }
}

/// pdf value at `t`; zero past the deadline.
inline double pdf_at(const LatencyDistribution& ld, std::size_t t) {
  return t < ld.pdf().size() ? ld.pdf()[t] : 0.0;
}

/// CDF at `t`, held at its final value past the deadline.
inline double cdf_at(const LatencyDistribution& ld, std::size_t t) {
  double total = 0.0;
  const auto& pdf = ld.pdf();
  for (std::size_t i = 0; i < pdf.size() && i <= t; ++i) total += pdf[i];
  return total;
}

}  // namespace dq::csv
