#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace xlt {

// Unix seconds, UTC.
using UnixTime = std::int64_t;

// Parses "YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HH:MM]" into Unix seconds.
// Fractional seconds are truncated; an explicit offset is folded into UTC.
// A date without a time component is taken as midnight UTC.
UnixTime parse_iso8601(std::string_view text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(UnixTime t);

}  // namespace xlt
