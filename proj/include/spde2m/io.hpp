#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spde2m {

/// Shortest decimal form that round-trips the value (std::to_chars).
std::string format_double(double value);

/// Write via a temporary file in the same directory, then rename.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Parse "start:stop:step", inclusive of both ends when step divides the
/// range. A bare number is a one-point grid.
std::vector<double> parse_time_grid(const std::string& text);

/// Comma-separated positive integers ("1000,10000,100000").
std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace spde2m
