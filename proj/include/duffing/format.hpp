#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace duffing {

// Shortest-form decimal with 15 significant digits, '.' separator, no
// grouping; locale independent.
std::string format_number(double v);

// Comma-joined fields followed by a newline.
std::string csv_line(const std::vector<std::string>& fields);

// Writes content to path, replacing the file.  Throws std::runtime_error on
// I/O failure.
void write_file(const std::string& path, std::string_view content);

}  // namespace duffing
