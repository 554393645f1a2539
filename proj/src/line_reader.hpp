#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pathloc/error.hpp"

namespace pathloc::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a line into whitespace-separated integer tokens.
inline std::vector<std::int64_t> parse_integers(std::string_view line, std::size_t line_no) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    const std::string_view token = line.substr(pos, end - pos);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(line_no, "expected an integer, got '" + std::string(token) + "'");
    }
    out.push_back(value);
    pos = end;
  }
  return out;
}

// Calls fn(line_no, tokens) for every non-blank, non-comment line.
template <class Fn>
inline void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') fn(line_no, parse_integers(line, line_no));
    start = end + 1;
  }
}

}  // namespace pathloc::detail
