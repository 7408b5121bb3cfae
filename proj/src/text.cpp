#include "chaoslab/text.hpp"

#include <cctype>
#include <charconv>

#include "chaoslab/error.hpp"

namespace chaoslab {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

namespace {

int depth_delta(char c) {
  switch (c) {
    case '(': case '[': case '{': return 1;
    case ')': case ']': case '}': return -1;
    default: return 0;
  }
}

}  // namespace

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (depth == 0 && s[i] == sep)) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
      continue;
    }
    depth += depth_delta(s[i]);
  }
  if (depth != 0) throw Error(ErrorCode::parse, "unbalanced brackets in '" + std::string(s) + "'");
  return out;
}

std::size_t rfind_top_level(std::string_view s, char sep) {
  int depth = 0;
  std::size_t found = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (depth == 0 && s[i] == sep) found = i;
    depth += depth_delta(s[i]);
  }
  return found;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::parse, "malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace chaoslab
