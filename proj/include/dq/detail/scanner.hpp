#pragma once

// Character scanner with line/column tracking, shared by the expression and
// network parsers. Numbers are read with std::from_chars, so parsing never
// depends on the process locale.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "dq/parse_error.hpp"

namespace dq::detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t line = 1) : text_(text), line_(line) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char peek_at(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  void advance() {
    if (at_end()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  /// Skips blanks; newlines too unless `stop_at_newline`.
  void skip_space(bool stop_at_newline = false) {
    while (!at_end()) {
      char c = peek();
      if (c == '\n' && stop_at_newline) return;
      if (!std::isspace(static_cast<unsigned char>(c))) return;
      advance();
    }
  }

  [[noreturn]] void fail(ParseErrorCode code, const std::string& detail) const {
    throw ParseError(code, line_, column_, detail);
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail(ParseErrorCode::Syntax, "expected '" + std::string(token) + "'" + found());
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  }

  /// Letters, digits, '_', '-', '.'; empty if none.
  std::string identifier() {
    std::size_t begin = pos_;
    while (!at_end() && is_ident_char(peek())) advance();
    return std::string(text_.substr(begin, pos_ - begin));
  }

  double number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail(ParseErrorCode::Syntax, "expected a number" + found());
    while (text_.data() + pos_ < ptr) advance();
    return value;
  }

  std::int64_t integer() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail(ParseErrorCode::Syntax, "expected an integer" + found());
    bool fractional = ptr + 1 < last && *ptr == '.' && std::isdigit(static_cast<unsigned char>(ptr[1]));
    if (fractional || (ptr != last && (*ptr == 'e' || *ptr == 'E')))
      fail(ParseErrorCode::Syntax, "expected an integer" + found());
    while (text_.data() + pos_ < ptr) advance();
    return value;
  }

  std::string found() const {
    if (at_end()) return ", found end of input";
    if (peek() == '\n') return ", found end of line";
    return std::string(", found '") + peek() + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
};

}  // namespace dq::detail
