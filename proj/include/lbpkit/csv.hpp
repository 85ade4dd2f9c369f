#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lbpkit::csv {

/// Shortest text for integral values, otherwise 17 significant digits.
std::string format_real(double v);

/// Splits on commas; surrounding spaces are trimmed. No quoting support.
std::vector<std::string_view> split(std::string_view line);

/// Strict full-field parse; returns false on any trailing garbage.
bool parse_real(std::string_view field, double& out);

struct Line {
  std::size_t number;  // 1-based
  std::string text;
};

/// Whole file as text. Throws MalformedData if it cannot be read.
std::string read_text(const std::filesystem::path& path);

/// Non-blank lines of a text file, with original line numbers. Lines starting
/// with '#' are skipped. Throws MalformedData if the file cannot be read.
std::vector<Line> read_lines(const std::filesystem::path& path);
std::vector<Line> parse_lines(std::string_view text);

}  // namespace lbpkit::csv
