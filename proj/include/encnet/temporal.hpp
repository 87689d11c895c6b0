#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "encnet/types.hpp"

namespace encnet {

struct NodeTemporalStats {
  std::string device_id;
  Seconds n_p = 0;       // total presence: union of session intervals
  std::int64_t n_f = 0;  // session count

  friend bool operator==(const NodeTemporalStats&, const NodeTemporalStats&) = default;
};

struct LinkTemporalStats {
  std::string a;
  std::string b;
  Seconds l_p = 0;       // total copresence: union of encounter intervals
  std::int64_t l_f = 0;  // encounter count

  friend bool operator==(const LinkTemporalStats&, const LinkTemporalStats&) = default;
};

namespace detail {

/// Total measure of a union of half-open intervals.
inline Seconds union_measure(std::vector<std::pair<Seconds, Seconds>>& spans) {
  std::sort(spans.begin(), spans.end());
  Seconds total = 0;
  Seconds lo = 0;
  Seconds hi = std::numeric_limits<Seconds>::min();
  for (const auto& [s, e] : spans) {
    if (hi == std::numeric_limits<Seconds>::min() || s > hi) {
      if (hi != std::numeric_limits<Seconds>::min()) total += hi - lo;
      lo = s;
      hi = e;
    } else {
      hi = std::max(hi, e);
    }
  }
  if (hi != std::numeric_limits<Seconds>::min()) total += hi - lo;
  return total;
}

}  // namespace detail

/// Per-device presence and frequency. n_f counts sessions across all
/// scanners; n_p measures the union of the device's session intervals, so
/// simultaneous presence at two scanners is not double-counted. Devices
/// with no sessions are not emitted. Sorted by device_id.
inline std::vector<NodeTemporalStats> node_stats(const std::vector<Session>& sessions) {
  std::map<std::string, std::vector<std::pair<Seconds, Seconds>>> by_device;
  for (const Session& s : sessions) by_device[s.device_id].push_back({s.start, s.end});

  std::vector<NodeTemporalStats> out;
  out.reserve(by_device.size());
  for (auto& [device, spans] : by_device) {
    NodeTemporalStats st;
    st.device_id = device;
    st.n_f = static_cast<std::int64_t>(spans.size());
    st.n_p = detail::union_measure(spans);
    out.push_back(std::move(st));
  }
  return out;
}

/// Per-pair copresence and frequency. l_f counts encounters; l_p measures
/// the union of the pair's encounter intervals (a pair simultaneously
/// copresent at two scanners is counted once, which keeps
/// l_p <= min(n_p(a), n_p(b))). Pairs never copresent are not emitted.
/// Sorted by (a, b).
inline std::vector<LinkTemporalStats> link_stats(const TemporalTrace& trace) {
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<Seconds, Seconds>>> by_pair;
  for (const Encounter& e : trace.encounters) by_pair[{e.a, e.b}].push_back({e.start, e.end});

  std::vector<LinkTemporalStats> out;
  out.reserve(by_pair.size());
  for (auto& [pair, spans] : by_pair) {
    LinkTemporalStats st;
    st.a = pair.first;
    st.b = pair.second;
    st.l_f = static_cast<std::int64_t>(spans.size());
    st.l_p = detail::union_measure(spans);
    out.push_back(std::move(st));
  }
  return out;
}

/// Spearman rank correlation with average-rank tie handling (Pearson over
/// ranks). Requires equal lengths >= 2 and non-degenerate ranks.
inline double rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw argument_error("rank_correlation: length mismatch");
  if (x.size() < 2) throw argument_error("rank_correlation: need at least 2 points");

  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };

  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw argument_error("rank_correlation: degenerate (constant) ranks");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace encnet
