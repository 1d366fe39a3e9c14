#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mfpca {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

template <class T, class F>
std::string join_map(const std::vector<T>& items, std::string_view sep, F&& fmt) {
  std::vector<std::string> parts;
  parts.reserve(items.size());
  for (const auto& item : items) parts.push_back(fmt(item));
  return join(parts, sep);
}

/// Quotes a CSV field when it contains a separator, quote, or newline.
std::string csv_field(std::string_view text);

/// Writes `contents` to `path`, raising an Io error on failure.
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace mfpca
