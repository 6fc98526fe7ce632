#include "text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mkin/error.hpp"

namespace mkin::text {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  const std::string t = trim(s);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::BadParams, "not a number: '" + t + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view s, std::size_t count) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  if (out.size() != count) {
    throw Error(ErrorCode::BadParams, "expected " + std::to_string(count) + " numbers in '" +
                                          std::string(s) + "'");
  }
  return out;
}

std::vector<double> parse_numbers(std::string_view line, const std::string& source) {
  std::string l(line.substr(0, line.find('#')));
  for (char& c : l) {
    if (c == ',' || c == '\t' || c == '\r') c = ' ';
  }
  std::vector<double> row;
  std::istringstream in(l);
  std::string tok;
  while (in >> tok) {
    try {
      row.push_back(parse_double(tok));
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, source + ": bad number '" + tok + "'");
    }
  }
  return row;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_sig(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace mkin::text
