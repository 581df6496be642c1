// Line-oriented text helpers shared by the file readers and writers.
#ifndef LINKSOM_SRC_TEXT_HPP
#define LINKSOM_SRC_TEXT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linksom::text {

/// Splits on '\n', dropping a trailing '\r' from every line. A final line
/// without a terminator is kept; a trailing empty line after the last '\n' is not.
std::vector<std::string_view> split_lines(std::string_view text);

std::string_view trim(std::string_view s);

/// Whitespace-separated tokens (space, tab, vertical tab, form feed).
std::vector<std::string_view> tokens(std::string_view line);

std::vector<std::string_view> split(std::string_view s, char sep);

bool is_blank(std::string_view line);
bool is_comment(std::string_view line);

std::optional<double> parse_real(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double value);

}  // namespace linksom::text

#endif
