#include "core/iso8601.hpp"

#include <array>
#include <cstdio>

#include "core/error.hpp"

namespace xlt {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
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

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  // Fixed-width unsigned integer field.
  bool number(int digits, int& out) {
    if (pos + digits > s.size()) return false;
    int v = 0;
    for (int i = 0; i < digits; ++i) {
      char c = s[pos + i];
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    pos += digits;
    out = v;
    return true;
  }
};

}  // namespace

UnixTime parse_iso8601(std::string_view text) {
  Cursor c{text};
  int year = 0, mon = 0, day = 0;
  if (!c.number(4, year) || !c.eat('-') || !c.number(2, mon) || !c.eat('-') ||
      !c.number(2, day)) {
    fail(ErrorCode::parse, "invalid ISO-8601 timestamp: '" + std::string(text) + "'");
  }
  if (mon < 1 || mon > 12 || day < 1 || day > 31) {
    fail(ErrorCode::parse, "ISO-8601 date out of range: '" + std::string(text) + "'");
  }

  int hh = 0, mm = 0, ss = 0;
  int off_sign = 0, off_hh = 0, off_mm = 0;
  if (!c.done()) {
    if (!(c.eat('T') || c.eat(' ')) || !c.number(2, hh) || !c.eat(':') ||
        !c.number(2, mm) || !c.eat(':') || !c.number(2, ss)) {
      fail(ErrorCode::parse, "invalid ISO-8601 time: '" + std::string(text) + "'");
    }
    if (c.eat('.')) {  // fractional seconds, truncated
      bool any = false;
      while (!c.done() && c.peek() >= '0' && c.peek() <= '9') {
        ++c.pos;
        any = true;
      }
      if (!any) fail(ErrorCode::parse, "invalid fraction in timestamp: '" + std::string(text) + "'");
    }
    if (c.eat('Z')) {
      // UTC
    } else if (c.peek() == '+' || c.peek() == '-') {
      off_sign = c.peek() == '+' ? 1 : -1;
      ++c.pos;
      if (!c.number(2, off_hh)) {
        fail(ErrorCode::parse, "invalid offset in timestamp: '" + std::string(text) + "'");
      }
      c.eat(':');
      if (!c.done() && !c.number(2, off_mm)) {
        fail(ErrorCode::parse, "invalid offset in timestamp: '" + std::string(text) + "'");
      }
    }
  }
  if (!c.done()) {
    fail(ErrorCode::parse, "trailing characters in timestamp: '" + std::string(text) + "'");
  }
  if (hh > 23 || mm > 59 || ss > 60) {  // leap seconds tolerated
    fail(ErrorCode::parse, "ISO-8601 time out of range: '" + std::string(text) + "'");
  }

  std::int64_t days = days_from_civil(year, static_cast<unsigned>(mon),
                                      static_cast<unsigned>(day));
  {
    // Reject dates like Feb 30 that days_from_civil would silently normalize.
    std::int64_t y2;
    unsigned m2, d2;
    civil_from_days(days, y2, m2, d2);
    if (y2 != year || m2 != static_cast<unsigned>(mon) ||
        d2 != static_cast<unsigned>(day)) {
      fail(ErrorCode::parse, "ISO-8601 date out of range: '" + std::string(text) + "'");
    }
  }
  std::int64_t t = days * 86400 + hh * 3600 + mm * 60 + ss;
  t -= static_cast<std::int64_t>(off_sign) * (off_hh * 3600 + off_mm * 60);
  return t;
}

std::string format_iso8601(UnixTime t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem % 3600) / 60),
                static_cast<long long>(rem % 60));
  return std::string(buf.data());
}

}  // namespace xlt
