#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "encnet/types.hpp"

namespace encnet {

enum class RemovalPolicy { briefest, most_persistent };

/// Derives pairwise encounters from overlapping sessions.
///
/// Two sessions of distinct devices at the same scanner with an overlap of
/// positive length yield an encounter for the intersection. Consecutive
/// encounters of one (a, b, scanner) separated by <= merge_gap seconds are
/// merged into one. Note that such gaps only exist across a session
/// boundary of at least one endpoint, so a merged encounter can cover a
/// short absence. merge_gap = 0 still joins exactly-touching intervals.
/// The device set covers every device seen in the input sessions.
inline TemporalTrace build_encounters(const std::vector<Session>& sessions, Seconds merge_gap) {
  if (merge_gap < 0) throw argument_error("build_encounters: merge_gap must be >= 0");

  TemporalTrace trace;
  std::map<std::string, std::vector<const Session*>> by_scanner;
  for (const Session& s : sessions) {
    trace.devices.insert(s.device_id);
    by_scanner[s.scanner_id].push_back(&s);
  }

  // (a, b, scanner) -> overlap intervals, gathered per scanner.
  std::map<std::tuple<std::string, std::string, std::string>,
           std::vector<std::pair<Seconds, Seconds>>>
      by_pair;
  for (auto& [scanner, list] : by_scanner) {
    std::sort(list.begin(), list.end(), [](const Session* x, const Session* y) {
      return std::tie(x->start, x->end, x->device_id) < std::tie(y->start, y->end, y->device_id);
    });
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size() && list[j]->start < list[i]->end; ++j) {
        if (list[i]->device_id == list[j]->device_id) continue;
        const Seconds lo = std::max(list[i]->start, list[j]->start);
        const Seconds hi = std::min(list[i]->end, list[j]->end);
        if (hi <= lo) continue;
        const bool flip = list[j]->device_id < list[i]->device_id;
        const std::string& a = flip ? list[j]->device_id : list[i]->device_id;
        const std::string& b = flip ? list[i]->device_id : list[j]->device_id;
        by_pair[{a, b, scanner}].push_back({lo, hi});
      }
    }
  }

  for (auto& [key, spans] : by_pair) {
    std::sort(spans.begin(), spans.end());
    Seconds lo = spans.front().first;
    Seconds hi = spans.front().second;
    for (std::size_t i = 1; i <= spans.size(); ++i) {
      if (i < spans.size() && spans[i].first - hi <= merge_gap) {
        hi = std::max(hi, spans[i].second);
        continue;
      }
      trace.encounters.push_back(
          Encounter{std::get<0>(key), std::get<1>(key), std::get<2>(key), lo, hi});
      if (i < spans.size()) {
        lo = spans[i].first;
        hi = spans[i].second;
      }
    }
  }

  std::sort(trace.encounters.begin(), trace.encounters.end(), encounter_less);
  return trace;
}

/// Collapses a trace into the static simple graph: one node per device, one
/// edge per pair with at least one encounter; edge weights accumulate the
/// raw encounter durations and the event count.
inline AggregateGraph aggregate(const TemporalTrace& trace) {
  AggregateGraph g;
  g.nodes = trace.devices;
  for (const Encounter& e : trace.encounters) {
    g.nodes.insert(e.a);
    g.nodes.insert(e.b);
    EdgeData& d = g.edges[{e.a, e.b}];
    d.total_overlap += e.duration();
    d.event_count += 1;
  }
  return g;
}

namespace detail {

/// floor(fraction * count) with a nudge so that decimal fractions that are
/// not exact binary doubles (0.3 * 10, ...) still land on the real-number
/// floor.
inline std::int64_t removal_count(double fraction, std::size_t count) {
  const double x = fraction * static_cast<double>(count);
  return static_cast<std::int64_t>(std::floor(x + 1e-9 + x * 1e-12));
}

}  // namespace detail

/// Drops floor(fraction * count) encounter events ranked by duration:
/// shortest first under `briefest`, longest first under `most_persistent`.
/// Duration ties remove the earlier start first, then the smaller (a, b).
/// The device set is unchanged.
inline TemporalTrace remove_encounters(const TemporalTrace& trace, double fraction,
                                       RemovalPolicy policy) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw argument_error("remove_encounters: fraction must be in [0, 1]");

  const std::size_t n = trace.encounters.size();
  const std::int64_t k = detail::removal_count(fraction, n);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& enc = trace.encounters;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const Seconds dx = enc[x].duration();
    const Seconds dy = enc[y].duration();
    if (dx != dy) return policy == RemovalPolicy::briefest ? dx < dy : dx > dy;
    return std::tie(enc[x].start, enc[x].a, enc[x].b, enc[x].scanner_id) <
           std::tie(enc[y].start, enc[y].a, enc[y].b, enc[y].scanner_id);
  });

  std::vector<char> removed(n, 0);
  for (std::int64_t i = 0; i < k; ++i) removed[order[i]] = 1;

  TemporalTrace out;
  out.devices = trace.devices;
  out.encounters.reserve(n - static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i)
    if (!removed[i]) out.encounters.push_back(enc[i]);
  return out;
}

}  // namespace encnet
