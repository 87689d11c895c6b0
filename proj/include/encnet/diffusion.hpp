#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "encnet/encounters.hpp"
#include "encnet/parallel.hpp"
#include "encnet/rng.hpp"
#include "encnet/types.hpp"

namespace encnet {

enum class DiffusionModel { si, sis };

inline const char* to_string(DiffusionModel m) {
  return m == DiffusionModel::si ? "si" : "sis";
}

struct Injection {
  std::string device;
  Seconds time = 0;

  friend bool operator==(const Injection&, const Injection&) = default;
};

struct EmulationConfig {
  DiffusionModel model = DiffusionModel::si;
  Seconds expiry = 0;        // infection lifetime; required positive for sis
  double transmission_rate = 1.0;  // per-encounter success chance in (0,1]
  std::int64_t sample = 0;   // sweep: cap on injections, 0 = full universe
  std::uint64_t seed = 1;    // subsampling, and draws when rate < 1
  int threads = 1;
  bool collect_curves = false;
};

struct ReplayResult {
  std::int64_t total_infected = 0;            // distinct devices ever infected
  std::optional<Seconds> extinction_time;     // sis: when the last infection expires
  std::vector<std::pair<Seconds, std::int64_t>> curve;  // (event time, infected count after)

  friend bool operator==(const ReplayResult&, const ReplayResult&) = default;
};

struct InjectionRun {
  Injection injection;
  ReplayResult result;

  friend bool operator==(const InjectionRun&, const InjectionRun&) = default;
};

namespace detail {

constexpr Seconds kNever = std::numeric_limits<Seconds>::max();

inline Seconds saturating_add(Seconds a, Seconds b) {
  return (a >= 0 && b > kNever - a) ? kNever : a + b;
}

/// Index-form trace for replay: device ids mapped to dense indices,
/// encounters reduced to (a, b, start) in canonical order. Transmission
/// happens at encounter start, so ends are not needed here.
struct CompactTrace {
  std::vector<std::string> device_ids;  // sorted
  std::vector<std::uint32_t> ea, eb;
  std::vector<Seconds> start;

  static CompactTrace from(const TemporalTrace& trace) {
    CompactTrace ct;
    ct.device_ids.assign(trace.devices.begin(), trace.devices.end());
    ct.ea.reserve(trace.encounters.size());
    ct.eb.reserve(trace.encounters.size());
    ct.start.reserve(trace.encounters.size());
    for (const Encounter& e : trace.encounters) {
      ct.ea.push_back(ct.index_of(e.a));
      ct.eb.push_back(ct.index_of(e.b));
      ct.start.push_back(e.start);
    }
    return ct;
  }

  std::uint32_t index_of(const std::string& id) const {
    const auto it = std::lower_bound(device_ids.begin(), device_ids.end(), id);
    if (it == device_ids.end() || *it != id)
      throw argument_error("diffusion: unknown device '" + id + "'");
    return static_cast<std::uint32_t>(it - device_ids.begin());
  }
};

inline void validate_emulation(const EmulationConfig& cfg) {
  if (cfg.model == DiffusionModel::sis && cfg.expiry <= 0)
    throw argument_error("diffusion: sis requires a positive expiry");
  if (!(cfg.transmission_rate > 0.0 && cfg.transmission_rate <= 1.0))
    throw argument_error("diffusion: transmission rate must be in (0, 1]");
  if (cfg.sample < 0) throw argument_error("diffusion: sample must be >= 0");
}

inline ReplayResult replay_compact(const CompactTrace& ct, const EmulationConfig& cfg,
                                   std::uint32_t inj_device, Seconds inj_time) {
  const bool sis = cfg.model == DiffusionModel::sis;
  const std::size_t n = ct.device_ids.size();

  // infection_at[v] is the start of v's current episode; kNever = susceptible.
  std::vector<Seconds> infection_at(n, kNever);
  std::vector<char> ever(n, 0);
  std::vector<std::pair<Seconds, std::uint32_t>> log;  // transmissions, injection excluded

  // Each encounter is a single transmission opportunity. At rate 1 nothing
  // is drawn; below 1 the first time an encounter sees exactly one infected
  // endpoint it draws once, and a failed draw is never retried. The stream
  // is keyed by injection so sweep results stay thread-order independent.
  const bool stochastic = cfg.transmission_rate < 1.0;
  std::vector<char> spent;
  Rng rng(mix_seed(mix_seed(cfg.seed, inj_device), static_cast<std::uint64_t>(inj_time)));
  if (stochastic) spent.assign(ct.start.size(), 0);

  infection_at[inj_device] = inj_time;
  ever[inj_device] = 1;
  std::int64_t total = 1;
  Seconds max_recovery = sis ? saturating_add(inj_time, cfg.expiry) : kNever;

  const auto infected = [&](std::uint32_t v, Seconds at) {
    if (infection_at[v] == kNever) return false;
    return !sis || at < saturating_add(infection_at[v], cfg.expiry);
  };

  // Encounters sharing a start time cascade to a fixpoint, so reach at rate
  // 1 is the time-respecting reachability closure (chains may continue at
  // equal times) and does not depend on tie-break order.
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(ct.start.begin(), ct.start.end(), inj_time) - ct.start.begin());
  while (i < ct.start.size()) {
    const Seconds s = ct.start[i];
    if (sis && s >= max_recovery) break;  // every episode has expired; nothing can spread
    std::size_t group_end = i;
    while (group_end < ct.start.size() && ct.start[group_end] == s) ++group_end;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = i; k < group_end; ++k) {
        if (stochastic && spent[k]) continue;
        const bool ia = infected(ct.ea[k], s);
        if (ia == infected(ct.eb[k], s)) continue;
        if (stochastic) {
          spent[k] = 1;
          if (!(rng.next_double() < cfg.transmission_rate)) continue;
        }
        const std::uint32_t v = ia ? ct.eb[k] : ct.ea[k];
        infection_at[v] = s;
        if (!ever[v]) {
          ever[v] = 1;
          ++total;
        }
        log.emplace_back(s, v);
        if (sis) max_recovery = std::max(max_recovery, saturating_add(s, cfg.expiry));
        changed = true;
      }
    }
    if (!sis && total == static_cast<std::int64_t>(n)) break;
    i = group_end;
  }

  ReplayResult result;
  result.total_infected = total;
  if (sis) result.extinction_time = max_recovery;

  if (cfg.collect_curves) {
    // Deltas at each event time; the injection counts but is not sampled.
    std::vector<std::pair<Seconds, std::int64_t>> deltas;
    std::vector<Seconds> sample_times;
    deltas.emplace_back(inj_time, 1);
    if (sis) {
      const Seconds r = saturating_add(inj_time, cfg.expiry);
      if (r != kNever) {
        deltas.emplace_back(r, -1);
        sample_times.push_back(r);
      }
    }
    for (const auto& [t, v] : log) {
      deltas.emplace_back(t, 1);
      sample_times.push_back(t);
      if (sis) {
        const Seconds r = saturating_add(t, cfg.expiry);
        if (r != kNever) {
          deltas.emplace_back(r, -1);
          sample_times.push_back(r);
        }
      }
    }
    std::sort(deltas.begin(), deltas.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::sort(sample_times.begin(), sample_times.end());
    sample_times.erase(std::unique(sample_times.begin(), sample_times.end()),
                       sample_times.end());

    std::int64_t count = 0;
    std::size_t di = 0;
    for (const Seconds t : sample_times) {
      while (di < deltas.size() && deltas[di].first <= t) count += deltas[di++].second;
      result.curve.emplace_back(t, count);
    }
  }
  return result;
}

}  // namespace detail

/// Replays one injection against the trace. Transmission happens at
/// encounter start: an infected endpoint infects a susceptible one
/// (always at rate 1, else with probability transmission_rate),
/// and same-start encounters cascade until stable. Under sis an episode
/// lasts exactly `expiry`; recovery at time t takes effect before
/// encounters starting at t.
inline ReplayResult replay(const TemporalTrace& trace, const EmulationConfig& cfg,
                           const Injection& injection) {
  detail::validate_emulation(cfg);
  const detail::CompactTrace ct = detail::CompactTrace::from(trace);
  return detail::replay_compact(ct, cfg, ct.index_of(injection.device), injection.time);
}

/// All distinct (device, encounter start) pairs, sorted by (time, device).
inline std::vector<Injection> injection_universe(const TemporalTrace& trace) {
  std::vector<Injection> universe;
  universe.reserve(trace.encounters.size() * 2);
  for (const Encounter& e : trace.encounters) {
    universe.push_back(Injection{e.a, e.start});
    universe.push_back(Injection{e.b, e.start});
  }
  const auto by_time_device = [](const Injection& x, const Injection& y) {
    if (x.time != y.time) return x.time < y.time;
    return x.device < y.device;
  };
  std::sort(universe.begin(), universe.end(), by_time_device);
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  return universe;
}

namespace detail {

inline std::vector<Injection> subsample(std::vector<Injection> universe, std::int64_t sample,
                                        std::uint64_t seed) {
  if (sample == 0 || static_cast<std::size_t>(sample) >= universe.size()) return universe;
  Rng rng(mix_seed(seed, 0));
  const std::size_t k = static_cast<std::size_t>(sample);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(universe.size() - i));
    std::swap(universe[i], universe[j]);
  }
  universe.resize(k);
  std::sort(universe.begin(), universe.end(), [](const Injection& x, const Injection& y) {
    if (x.time != y.time) return x.time < y.time;
    return x.device < y.device;
  });
  return universe;
}

inline std::vector<InjectionRun> sweep_compact(const CompactTrace& ct,
                                               const std::vector<Injection>& universe,
                                               const EmulationConfig& cfg) {
  std::vector<std::uint32_t> devices(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i)
    devices[i] = ct.index_of(universe[i].device);

  std::vector<InjectionRun> runs(universe.size());
  parallel_for(universe.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      runs[i].injection = universe[i];
      runs[i].result = replay_compact(ct, cfg, devices[i], universe[i].time);
    }
  });
  return runs;
}

}  // namespace detail

/// Replays every injection in the universe (or a seeded subsample of
/// `sample` of them). Results are index-addressed, so the outcome does not
/// depend on the thread count.
inline std::vector<InjectionRun> exhaustive_sweep(const TemporalTrace& trace,
                                                  const EmulationConfig& cfg) {
  detail::validate_emulation(cfg);
  const detail::CompactTrace ct = detail::CompactTrace::from(trace);
  const std::vector<Injection> universe =
      detail::subsample(injection_universe(trace), cfg.sample, cfg.seed);
  return detail::sweep_compact(ct, universe, cfg);
}

struct SweepSummary {
  std::int64_t injections = 0;
  double mean_final_reach = 0.0;
  std::optional<double> median_extinction_time;  // sis only
};

inline SweepSummary summarize_sweep(const std::vector<InjectionRun>& runs) {
  if (runs.empty()) throw argument_error("diffusion: cannot summarize an empty sweep");
  SweepSummary summary;
  summary.injections = static_cast<std::int64_t>(runs.size());
  std::int64_t reach_sum = 0;
  for (const InjectionRun& r : runs) reach_sum += r.result.total_infected;
  summary.mean_final_reach = static_cast<double>(reach_sum) / static_cast<double>(runs.size());

  if (runs.front().result.extinction_time.has_value()) {
    std::vector<Seconds> ext;
    ext.reserve(runs.size());
    for (const InjectionRun& r : runs) ext.push_back(*r.result.extinction_time);
    std::sort(ext.begin(), ext.end());
    const std::size_t m = ext.size();
    summary.median_extinction_time =
        (m % 2 == 1) ? static_cast<double>(ext[m / 2])
                     : (static_cast<double>(ext[m / 2 - 1]) + static_cast<double>(ext[m / 2])) / 2.0;
  }
  return summary;
}

struct RemovalOutcome {
  double fraction = 0.0;
  SweepSummary summary;
  std::vector<InjectionRun> runs;  // kept only when cfg.collect_curves
};

/// Removes an encounter fraction per policy, then replays a fresh sweep
/// against each filtered trace. The injection universe is rebuilt from each
/// filtered trace, so sampled injections always land on surviving
/// encounters; a fraction that removes everything yields an empty summary.
inline std::vector<RemovalOutcome> removal_experiment(const TemporalTrace& trace,
                                                      const std::vector<double>& fractions,
                                                      RemovalPolicy policy,
                                                      const EmulationConfig& cfg) {
  detail::validate_emulation(cfg);
  if (trace.encounters.empty())
    throw argument_error("diffusion: trace has no encounters to inject into");

  std::vector<RemovalOutcome> outcomes;
  outcomes.reserve(fractions.size());
  for (const double fraction : fractions) {
    const TemporalTrace filtered = remove_encounters(trace, fraction, policy);
    RemovalOutcome outcome{fraction, {}, {}};
    if (!filtered.encounters.empty()) {
      std::vector<InjectionRun> runs = exhaustive_sweep(filtered, cfg);
      outcome.summary = summarize_sweep(runs);
      if (cfg.collect_curves) outcome.runs = std::move(runs);
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace encnet
