#ifndef JAWKIT_IO_UTIL_HPP
#define JAWKIT_IO_UTIL_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace jawkit {

/// Shortest round-trip decimal representation (std::to_chars). Used by every
/// CSV/JSON writer so that identical values always serialize identically.
std::string format_double(double value);

/// Splits one CSV line on commas; fields are trimmed of surrounding spaces.
std::vector<std::string> split_csv_line(const std::string& line);

double parse_double_field(const std::string& field, const std::string& context);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace jawkit

#endif  // JAWKIT_IO_UTIL_HPP
