#include "afdforge/time.hpp"

#include <cmath>
#include <cstdio>
#include <charconv>

namespace afdforge::util {

namespace {

// Days from 1970-01-01 to y-m-d, proleptic Gregorian.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

bool parse_fixed_uint(std::string_view s, size_t pos, size_t len, unsigned& out) {
  if (pos + len > s.size()) return false;
  unsigned v = 0;
  for (size_t i = 0; i < len; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<Instant> parse_iso8601(std::string_view text) {
  // YYYY-MM-DDThh:mm:ssZ
  if (text.size() != 20) return std::nullopt;
  unsigned year, month, day, hour, minute, second;
  if (!parse_fixed_uint(text, 0, 4, year)) return std::nullopt;
  if (text[4] != '-') return std::nullopt;
  if (!parse_fixed_uint(text, 5, 2, month)) return std::nullopt;
  if (text[7] != '-') return std::nullopt;
  if (!parse_fixed_uint(text, 8, 2, day)) return std::nullopt;
  if (text[10] != 'T') return std::nullopt;
  if (!parse_fixed_uint(text, 11, 2, hour)) return std::nullopt;
  if (text[13] != ':') return std::nullopt;
  if (!parse_fixed_uint(text, 14, 2, minute)) return std::nullopt;
  if (text[16] != ':') return std::nullopt;
  if (!parse_fixed_uint(text, 17, 2, second)) return std::nullopt;
  if (text[19] != 'Z') return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  std::int64_t days = days_from_civil(year, month, day);
  return days * kSecondsPerDay + static_cast<std::int64_t>(hour) * 3600 +
         static_cast<std::int64_t>(minute) * 60 + second;
}

std::string format_iso8601(Instant t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    days -= 1;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::optional<std::int64_t> parse_duration_seconds(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  char unit = text.back();
  std::int64_t scale;
  switch (unit) {
    case 's': scale = 1; break;
    case 'm': scale = 60; break;
    case 'h': scale = kSecondsPerHour; break;
    case 'd': scale = kSecondsPerDay; break;
    default: return std::nullopt;
  }
  std::string_view num = text.substr(0, text.size() - 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size()) return std::nullopt;
  if (!(value >= 0.0) || value > 1e12) return std::nullopt;
  return static_cast<std::int64_t>(std::llround(value * static_cast<double>(scale)));
}

std::string format_duration(std::int64_t seconds) {
  char buf[32];
  if (seconds % kSecondsPerDay == 0 && seconds != 0) {
    std::snprintf(buf, sizeof(buf), "%lldd", static_cast<long long>(seconds / kSecondsPerDay));
  } else if (seconds % kSecondsPerHour == 0 && seconds != 0) {
    std::snprintf(buf, sizeof(buf), "%lldh", static_cast<long long>(seconds / kSecondsPerHour));
  } else if (seconds % 60 == 0 && seconds != 0) {
    std::snprintf(buf, sizeof(buf), "%lldm", static_cast<long long>(seconds / 60));
  } else {
    std::snprintf(buf, sizeof(buf), "%llds", static_cast<long long>(seconds));
  }
  return buf;
}

}  // namespace afdforge::util
