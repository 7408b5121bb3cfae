#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chaoslab {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
/// Splits on `sep` only where it is not nested inside (), [] or {}.
std::vector<std::string_view> split_top_level(std::string_view s, char sep);
/// Position of the last `sep` at nesting depth 0, or npos.
std::size_t rfind_top_level(std::string_view s, char sep);
std::int64_t parse_int(std::string_view s);

}  // namespace chaoslab
