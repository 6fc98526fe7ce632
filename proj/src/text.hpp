#pragma once

// Small string helpers shared by the spec parsers.

#include <string>
#include <string_view>
#include <vector>

namespace mkin::text {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
/// Whole-string double; throws BadParams otherwise. Accepts "inf".
double parse_double(std::string_view s);
/// Comma separated doubles, exactly `count` of them.
std::vector<double> parse_list(std::string_view s, std::size_t count);
/// Numbers on one data-file line ('#' starts a comment, commas count as spaces).
std::vector<double> parse_numbers(std::string_view line, const std::string& source);
/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);
/// Fixed number of significant digits.
std::string format_sig(double v, int digits = 12);

}  // namespace mkin::text
