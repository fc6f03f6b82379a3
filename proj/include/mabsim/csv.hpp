#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mabsim {

/// Shortest decimal that round-trips, '.' separator, no locale.
std::string format_double(double x);

/// Comma-joined fields terminated by LF. Fields must not contain ',' or newlines.
std::string csv_row(const std::vector<std::string>& fields);

/// Splits LF-terminated rows on ','. No quoting.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace mabsim
