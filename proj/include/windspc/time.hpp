#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace windspc {

// Seconds since the Unix epoch, UTC. All telemetry timestamps are whole
// seconds; sub-second precision is out of scope.
using Timestamp = std::int64_t;

// Accepts "YYYY-MM-DDTHH:MM:SS" with optional trailing 'Z' and either 'T' or
// a single space as the date/time separator. A bare date "YYYY-MM-DD" parses
// as midnight UTC. Returns nullopt on malformed input.
std::optional<Timestamp> parse_iso8601(std::string_view text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ" (the canonical serialization form).
std::string format_iso8601(Timestamp t);

}  // namespace windspc
