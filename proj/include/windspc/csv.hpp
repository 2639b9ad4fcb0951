#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace windspc::csv {

// Splits one CSV line. Handles double-quoted fields with "" escapes; does not
// handle embedded newlines (none of the formats here produce them).
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it contains a comma, quote, or leading/trailing
// whitespace.
std::string escape_field(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Strict double parse of a trimmed cell. Empty cells, trailing garbage, and
// non-finite values (nan/inf) all come back as nullopt so missingness stays
// explicit.
std::optional<double> parse_double(std::string_view cell);

std::optional<long long> parse_int(std::string_view cell);

// Shortest round-trip formatting (via std::to_chars), used everywhere a
// double lands in a file so reruns are byte-identical.
std::string format_double(double value);

std::string_view trim(std::string_view s);

}  // namespace windspc::csv
