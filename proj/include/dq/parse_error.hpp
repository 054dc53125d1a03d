#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dq {

enum class ParseErrorCode {
  Syntax,
  UnknownNode,
  DuplicateNode,
  DuplicateEdge,
  InvalidProbability,
  InvalidDistribution,
};

inline std::string_view to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::Syntax: return "syntax";
    case ParseErrorCode::UnknownNode: return "unknown-node";
    case ParseErrorCode::DuplicateNode: return "duplicate-node";
    case ParseErrorCode::DuplicateEdge: return "duplicate-edge";
    case ParseErrorCode::InvalidProbability: return "invalid-probability";
    case ParseErrorCode::InvalidDistribution: return "invalid-distribution";
  }
  return "unknown";
}

/// Input error with a 1-based source position. what() reads
/// "<code> at <line>:<column>: <detail>".
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::size_t line, std::size_t column, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + " at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + detail),
        code_(code),
        line_(line),
        column_(column),
        detail_(detail) {}

  ParseErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorCode code_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace dq
