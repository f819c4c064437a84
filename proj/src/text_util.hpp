#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the file parsers.
namespace fdrsense::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::vector<std::string_view> split_char(std::string_view s, char sep);
std::string lower(std::string_view s);
std::string upper(std::string_view s);

/// Whole-token parse; rejects trailing garbage and empty input.
std::optional<double> parse_double(std::string_view s);

/// Port count N from a ".sNp" extension, if the name has one.
std::optional<int> touchstone_ports(std::string_view filename);

}  // namespace fdrsense::text
