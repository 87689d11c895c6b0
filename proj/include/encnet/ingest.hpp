#pragma once

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "encnet/types.hpp"

namespace encnet {

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline Seconds parse_time_field(std::string_view field, std::size_t line_no) {
  Seconds value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty())
    throw parse_error(line_no, "time is not an integer: '" + std::string(field) + "'");
  if (value < 0) throw parse_error(line_no, "time is negative");
  return value;
}

}  // namespace detail

/// Parses `device_id,scanner_id,time` lines. Blank lines and lines starting
/// with '#' are skipped. Records come back in file order, unsorted and
/// without dedup. Malformed lines raise parse_error with the line number.
inline std::vector<Sighting> parse_sightings(std::istream& in) {
  std::vector<Sighting> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = detail::strip_cr(line);
    if (detail::is_blank(v) || v.front() == '#') continue;

    const std::size_t c1 = v.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : v.find(',', c1 + 1);
    if (c2 == std::string_view::npos || v.find(',', c2 + 1) != std::string_view::npos)
      throw parse_error(line_no, "expected 3 comma-separated fields");

    Sighting s;
    s.device_id = std::string(v.substr(0, c1));
    s.scanner_id = std::string(v.substr(c1 + 1, c2 - c1 - 1));
    if (s.device_id.empty()) throw parse_error(line_no, "empty device_id");
    if (s.scanner_id.empty()) throw parse_error(line_no, "empty scanner_id");
    s.time = detail::parse_time_field(v.substr(c2 + 1), line_no);
    out.push_back(std::move(s));
  }
  return out;
}

/// Merges periodic detections into visit sessions, per (device, scanner).
///
/// Consecutive sighting times t_i, t_{i+1} belong to the same session when
/// t_{i+1} - t_i <= gap. Each detection implies presence for one scan
/// period, so the session spans [first, last + scan_period). When
/// gap < scan_period, sightings whose implied intervals overlap are merged
/// as well; otherwise two sessions of one key could overlap, and session
/// intervals must stay disjoint. Duplicate sighting times collapse.
/// Output is sorted by (device, scanner, start).
inline std::vector<Session> sessionize(const std::vector<Sighting>& sightings, Seconds gap,
                                       Seconds scan_period) {
  if (gap <= 0) throw argument_error("sessionize: gap must be positive");
  if (scan_period <= 0) throw argument_error("sessionize: scan_period must be positive");

  std::map<std::pair<std::string, std::string>, std::vector<Seconds>> by_key;
  for (const Sighting& s : sightings) by_key[{s.device_id, s.scanner_id}].push_back(s.time);

  std::vector<Session> out;
  for (auto& [key, times] : by_key) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    Seconds first = times.front();
    Seconds last = times.front();
    for (std::size_t i = 1; i <= times.size(); ++i) {
      const bool flush = i == times.size() ||
                         (times[i] - last > gap && times[i] - last >= scan_period);
      if (flush) {
        out.push_back(Session{key.first, key.second, first, last + scan_period});
        if (i < times.size()) first = times[i];
      }
      if (i < times.size()) last = times[i];
    }
  }
  return out;
}

}  // namespace encnet
