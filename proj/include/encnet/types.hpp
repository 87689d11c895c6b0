#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace encnet {

/// All timestamps and durations are integer seconds (epoch or trace-relative).
using Seconds = std::int64_t;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input line; carries the 1-based line number.
struct parse_error : error {
  parse_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct argument_error : error {
  using error::error;
};

struct fit_error : error {
  using error::error;
};

/// One raw detection of a device by a scanner.
struct Sighting {
  std::string device_id;
  std::string scanner_id;
  Seconds time = 0;

  friend bool operator==(const Sighting&, const Sighting&) = default;
};

/// Maximal merged visit interval of one device at one scanner, [start, end).
struct Session {
  std::string device_id;
  std::string scanner_id;
  Seconds start = 0;
  Seconds end = 0;

  Seconds duration() const { return end - start; }
  friend bool operator==(const Session&, const Session&) = default;
};

/// Copresence interval of a device pair at one scanner; a < b lexicographically.
struct Encounter {
  std::string a;
  std::string b;
  std::string scanner_id;
  Seconds start = 0;
  Seconds end = 0;

  Seconds duration() const { return end - start; }
  friend bool operator==(const Encounter&, const Encounter&) = default;
};

/// Canonical trace order: (start, end, a, b, scanner).
inline bool encounter_less(const Encounter& x, const Encounter& y) {
  if (x.start != y.start) return x.start < y.start;
  if (x.end != y.end) return x.end < y.end;
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.scanner_id < y.scanner_id;
}

/// Time-ordered encounter sequence plus the full device universe
/// (devices that never met anyone are still members).
struct TemporalTrace {
  std::vector<Encounter> encounters;
  std::set<std::string> devices;

  friend bool operator==(const TemporalTrace&, const TemporalTrace&) = default;
};

struct EdgeData {
  Seconds total_overlap = 0;
  std::int64_t event_count = 0;

  friend bool operator==(const EdgeData&, const EdgeData&) = default;
};

/// Static simple graph over device ids; edge key is the ordered pair (a, b), a < b.
struct AggregateGraph {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, EdgeData> edges;

  friend bool operator==(const AggregateGraph&, const AggregateGraph&) = default;
};

/// Throws argument_error unless the trace satisfies its structural invariants:
/// canonical sort order, positive durations, a < b, devices covers endpoints.
inline void validate_trace(const TemporalTrace& trace) {
  const Encounter* prev = nullptr;
  for (const Encounter& e : trace.encounters) {
    if (e.a.empty() || e.b.empty()) throw argument_error("encounter with empty device id");
    if (e.a >= e.b) throw argument_error("encounter endpoints not ordered: " + e.a + ", " + e.b);
    if (e.end <= e.start) throw argument_error("encounter with non-positive duration");
    if (!trace.devices.count(e.a) || !trace.devices.count(e.b))
      throw argument_error("encounter endpoint missing from device set");
    if (prev && encounter_less(e, *prev)) throw argument_error("encounters out of order");
    prev = &e;
  }
}

inline void validate_sessions(const std::vector<Session>& sessions) {
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const Session& s = sessions[i];
    if (s.device_id.empty() || s.scanner_id.empty())
      throw argument_error("session with empty id");
    if (s.end <= s.start) throw argument_error("session with non-positive duration");
    if (i > 0) {
      const Session& p = sessions[i - 1];
      if (p.device_id == s.device_id && p.scanner_id == s.scanner_id && s.start < p.end)
        throw argument_error("overlapping sessions for " + s.device_id + "@" + s.scanner_id);
    }
  }
}

}  // namespace encnet
