#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace afdforge::util {

// Seconds since the Unix epoch, always UTC.
using Instant = std::int64_t;

constexpr std::int64_t kSecondsPerHour = 3600;
constexpr std::int64_t kSecondsPerDay = 86400;

// Parses "YYYY-MM-DDThh:mm:ssZ" (MediaWiki export timestamps).
std::optional<Instant> parse_iso8601(std::string_view text);

// Formats as "YYYY-MM-DDThh:mm:ssZ".
std::string format_iso8601(Instant t);

// Parses durations like "45s", "30m", "13h", "1d", "1.5d". Decimal fractions
// are allowed; the result is rounded to whole seconds.
std::optional<std::int64_t> parse_duration_seconds(std::string_view text);

// Renders a second count back into the shortest of d/h/m/s that divides it.
std::string format_duration(std::int64_t seconds);

}  // namespace afdforge::util
