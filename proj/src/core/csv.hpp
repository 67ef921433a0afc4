#pragma once

#include <cstdio>
#include <string>

namespace xlt {

// Quotes a CSV field only when needed (comma, quote, CR or LF present);
// embedded quotes are doubled.
inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out;
  out.reserve(value.size() + 2);
  out.push_back('"');
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Shortest round-trippable-enough decimal form used in all report files, so
// reruns diff cleanly.
inline std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace xlt
