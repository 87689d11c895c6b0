#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <set>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "encnet/diffusion.hpp"
#include "encnet/growth.hpp"
#include "encnet/ingest.hpp"
#include "encnet/powerlaw.hpp"
#include "encnet/structural.hpp"
#include "encnet/temporal.hpp"
#include "encnet/types.hpp"

namespace encnet {
namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_int(std::int64_t v) { return std::to_string(v); }

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

inline std::int64_t parse_int_field(std::string_view field, std::size_t line_no,
                                    const char* what) {
  std::int64_t value = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw parse_error(line_no, std::string("bad ") + what + " field");
  return value;
}

inline double parse_double_field(std::string_view field, std::size_t line_no, const char* what) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw parse_error(line_no, std::string("bad ") + what + " field");
  return value;
}

}  // namespace detail

// ---- sightings / sessions -------------------------------------------------

inline void write_sightings(std::ostream& os, const std::vector<Sighting>& sightings) {
  for (const Sighting& s : sightings)
    os << s.device_id << ',' << s.scanner_id << ',' << s.time << '\n';
}

inline void write_sessions(std::ostream& os, const std::vector<Session>& sessions) {
  os << "device_id,scanner_id,start,end\n";
  for (const Session& s : sessions)
    os << s.device_id << ',' << s.scanner_id << ',' << s.start << ',' << s.end << '\n';
}

inline std::vector<Session> read_sessions(std::istream& is) {
  std::vector<Session> sessions;
  std::string raw;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    if (first_row) {
      first_row = false;
      if (line == "device_id,scanner_id,start,end") continue;
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() != 4) throw parse_error(line_no, "expected 4 comma-separated fields");
    if (fields[0].empty() || fields[1].empty())
      throw parse_error(line_no, "empty device or scanner id");
    Session s;
    s.device_id = std::string(fields[0]);
    s.scanner_id = std::string(fields[1]);
    s.start = detail::parse_int_field(fields[2], line_no, "start");
    s.end = detail::parse_int_field(fields[3], line_no, "end");
    if (s.end <= s.start) throw parse_error(line_no, "session end must exceed start");
    sessions.push_back(std::move(s));
  }
  validate_sessions(sessions);
  return sessions;
}

// ---- encounter traces -----------------------------------------------------

/// Trace file: one `# device: <id>` line per device with no encounters
/// (sorted), then one `a,b,scanner_id,start,end` row per encounter in
/// canonical order. write(read(x)) is byte-identical for files this writer
/// produced.
inline void write_trace(std::ostream& os, const TemporalTrace& trace) {
  std::set<std::string> seen;
  for (const Encounter& e : trace.encounters) {
    seen.insert(e.a);
    seen.insert(e.b);
  }
  for (const std::string& d : trace.devices)
    if (!seen.count(d)) os << "# device: " << d << '\n';
  for (const Encounter& e : trace.encounters)
    os << e.a << ',' << e.b << ',' << e.scanner_id << ',' << e.start << ',' << e.end << '\n';
}

inline TemporalTrace read_trace(std::istream& is) {
  constexpr std::string_view kDevicePrefix = "# device: ";
  TemporalTrace trace;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.substr(0, kDevicePrefix.size()) == kDevicePrefix) {
        const std::string_view id = line.substr(kDevicePrefix.size());
        if (id.empty()) throw parse_error(line_no, "empty device id");
        trace.devices.insert(std::string(id));
      }
      continue;
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() != 5) throw parse_error(line_no, "expected 5 comma-separated fields");
    if (fields[0].empty() || fields[1].empty() || fields[2].empty())
      throw parse_error(line_no, "empty id field");
    Encounter e;
    e.a = std::string(fields[0]);
    e.b = std::string(fields[1]);
    e.scanner_id = std::string(fields[2]);
    e.start = detail::parse_int_field(fields[3], line_no, "start");
    e.end = detail::parse_int_field(fields[4], line_no, "end");
    if (e.b <= e.a) throw parse_error(line_no, "encounter endpoints must satisfy a < b");
    if (e.end <= e.start) throw parse_error(line_no, "encounter end must exceed start");
    trace.devices.insert(e.a);
    trace.devices.insert(e.b);
    trace.encounters.push_back(std::move(e));
  }
  std::sort(trace.encounters.begin(), trace.encounters.end(), encounter_less);
  validate_trace(trace);
  return trace;
}

// ---- metrics --------------------------------------------------------------

inline nlohmann::json summary_json(const StructuralSummary& s) {
  nlohmann::json j;
  j["size"] = s.size;
  j["edges"] = s.edges;
  j["density"] = s.density;
  j["core"] = s.core;
  j["k"] = s.avg_degree;
  j["lambda_max"] = s.diameter;
  j["lambda"] = s.avg_path_length;
  j["C"] = s.avg_clustering;
  return j;
}

inline void write_degree_profile(std::ostream& os, const DegreeProfile& profile) {
  os << "k,count,C_k\n";
  for (const auto& [k, count] : profile.degree_counts) {
    os << k << ',' << count << ',';
    const auto it = profile.ck_profile.find(k);
    os << detail::fmt_double(it == profile.ck_profile.end() ? 0.0 : it->second) << '\n';
  }
}

inline void write_node_stats(std::ostream& os, const std::vector<NodeTemporalStats>& stats) {
  os << "device_id,n_p,n_f\n";
  for (const NodeTemporalStats& s : stats)
    os << s.device_id << ',' << s.n_p << ',' << s.n_f << '\n';
}

inline void write_link_stats(std::ostream& os, const std::vector<LinkTemporalStats>& stats) {
  os << "a,b,l_p,l_f\n";
  for (const LinkTemporalStats& s : stats)
    os << s.a << ',' << s.b << ',' << s.l_p << ',' << s.l_f << '\n';
}

// ---- distributions --------------------------------------------------------

inline void write_ccdf(std::ostream& os, const Ccdf& c) {
  os << "x,p\n";
  for (const auto& [x, p] : c.points)
    os << detail::fmt_double(x) << ',' << detail::fmt_double(p) << '\n';
}

inline nlohmann::json fit_json(const PowerLawFit& f) {
  nlohmann::json j;
  j["alpha_minus_1"] = f.alpha_minus_1;
  j["alpha"] = f.alpha;
  j["xmin"] = f.xmin;
  j["method"] = to_string(f.method);
  j["fit_quality"] = f.fit_quality;
  j["n_tail"] = f.n_tail;
  return j;
}

/// Reads one named column of a headered CSV as doubles. A non-empty
/// `count_column` repeats each value that many times (for pre-binned data
/// such as degree,count files).
inline std::vector<double> read_samples_csv(std::istream& is, const std::string& value_column,
                                            const std::string& count_column = {}) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t value_idx = static_cast<std::size_t>(-1);
  std::size_t count_idx = static_cast<std::size_t>(-1);
  std::vector<double> samples;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (value_idx == static_cast<std::size_t>(-1)) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == value_column) value_idx = i;
        if (!count_column.empty() && fields[i] == count_column) count_idx = i;
      }
      if (value_idx == static_cast<std::size_t>(-1))
        throw parse_error(line_no, "column '" + value_column + "' not found in header");
      if (!count_column.empty() && count_idx == static_cast<std::size_t>(-1))
        throw parse_error(line_no, "column '" + count_column + "' not found in header");
      continue;
    }
    if (fields.size() <= value_idx || (count_idx != static_cast<std::size_t>(-1) && fields.size() <= count_idx))
      throw parse_error(line_no, "row has too few fields");
    const double value = detail::parse_double_field(fields[value_idx], line_no, "sample");
    std::int64_t count = 1;
    if (count_idx != static_cast<std::size_t>(-1)) {
      count = detail::parse_int_field(fields[count_idx], line_no, "count");
      if (count < 0) throw parse_error(line_no, "negative count");
    }
    for (std::int64_t i = 0; i < count; ++i) samples.push_back(value);
  }
  if (value_idx == static_cast<std::size_t>(-1))
    throw parse_error(line_no == 0 ? 1 : line_no, "missing header row");
  return samples;
}

// ---- growth config --------------------------------------------------------

inline nlohmann::json growth_config_json(const GrowthConfig& c) {
  nlohmann::json j;
  j["population"] = c.population;
  j["steps"] = c.steps;
  j["freq_exponent"] = c.freq_exponent;
  j["presence_exponent"] = c.presence_exponent;
  j["freq_scale"] = c.freq_scale;
  j["presence_scale"] = c.presence_scale;
  j["step_seconds"] = c.step_seconds;
  j["seed"] = c.seed;
  if (!c.explicit_freq.empty()) j["explicit_freq"] = c.explicit_freq;
  if (!c.explicit_presence.empty()) j["explicit_presence"] = c.explicit_presence;
  if (!c.labels.empty()) j["labels"] = c.labels;
  return j;
}

inline GrowthConfig growth_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw argument_error("growth config must be a JSON object");
  GrowthConfig c;
  c.population = j.value("population", c.population);
  c.steps = j.value("steps", c.steps);
  c.freq_exponent = j.value("freq_exponent", c.freq_exponent);
  c.presence_exponent = j.value("presence_exponent", c.presence_exponent);
  c.freq_scale = j.value("freq_scale", c.freq_scale);
  c.presence_scale = j.value("presence_scale", c.presence_scale);
  c.step_seconds = j.value("step_seconds", c.step_seconds);
  c.seed = j.value("seed", c.seed);
  c.explicit_freq = j.value("explicit_freq", c.explicit_freq);
  c.explicit_presence = j.value("explicit_presence", c.explicit_presence);
  c.labels = j.value("labels", c.labels);
  return c;
}

// ---- diffusion outputs ----------------------------------------------------

inline void write_curves(std::ostream& os, const std::vector<InjectionRun>& runs) {
  os << "injection_device,injection_time,event_time,count\n";
  for (const InjectionRun& r : runs)
    for (const auto& [t, count] : r.result.curve)
      os << r.injection.device << ',' << r.injection.time << ',' << t << ',' << count << '\n';
}

inline void write_removal_curves(std::ostream& os,
                                 const std::vector<std::pair<double, std::vector<InjectionRun>>>& by_fraction) {
  os << "fraction,injection_device,injection_time,event_time,count\n";
  for (const auto& [fraction, runs] : by_fraction)
    for (const InjectionRun& r : runs)
      for (const auto& [t, count] : r.result.curve)
        os << detail::fmt_double(fraction) << ',' << r.injection.device << ',' << r.injection.time
           << ',' << t << ',' << count << '\n';
}

inline nlohmann::json sweep_summary_json(const SweepSummary& s) {
  nlohmann::json j;
  j["injections"] = s.injections;
  j["mean_final_reach"] = s.mean_final_reach;
  if (s.median_extinction_time.has_value()) j["median_extinction_time"] = *s.median_extinction_time;
  return j;
}

inline nlohmann::json removal_outcomes_json(const std::vector<RemovalOutcome>& outcomes) {
  nlohmann::json j = nlohmann::json::object();
  for (const RemovalOutcome& o : outcomes)
    j[detail::fmt_double(o.fraction)] = sweep_summary_json(o.summary);
  return j;
}

}  // namespace encnet
