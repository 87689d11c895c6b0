#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "encnet/encounters.hpp"
#include "encnet/rng.hpp"
#include "encnet/types.hpp"

namespace encnet {

/// Availability-driven growth model. Per node, an activation probability
/// f_i and a presence factor p_i are sampled from power laws; an inactive
/// node activates with probability f_i each step and, once activated,
/// stays active for max(1, round(p_i * steps_inactive)) steps. Every pair
/// of simultaneously active nodes is linked; the linking rule reads only
/// the active set, never degrees.
struct GrowthConfig {
  std::int64_t population = 1000;
  std::int64_t steps = 1000;
  double freq_exponent = 1.6;      // CCDF exponent of the f_i sample distribution
  double presence_exponent = 0.9;  // CCDF exponent of the p_i sample distribution
  double freq_scale = 0.1;         // f_i = freq_scale * sample / max(sample); 0 disables activation
  double presence_scale = 0.002;   // p_i = presence_scale * sample
  std::int64_t step_seconds = 60;  // trace export: step t covers [(t-1), t) * step_seconds
  std::uint64_t seed = 1;

  // Optional overrides, each either empty or of length `population`.
  std::vector<double> explicit_freq;      // values in [0, 1], used verbatim
  std::vector<double> explicit_presence;  // positive values, used verbatim
  std::vector<std::string> labels;        // node labels; default n000..n999
};

struct GrowthResult {
  TemporalTrace trace;
  AggregateGraph graph;
};

namespace detail {

inline void validate_growth_config(const GrowthConfig& c) {
  if (c.population < 1) throw argument_error("growth: population must be >= 1");
  if (c.population > (std::int64_t{1} << 31))
    throw argument_error("growth: population too large");
  if (c.steps < 1) throw argument_error("growth: steps must be >= 1");
  if (c.steps > (std::int64_t{1} << 40)) throw argument_error("growth: steps too large");
  if (!(c.freq_exponent > 0.0) || !(c.presence_exponent > 0.0))
    throw argument_error("growth: exponents must be positive");
  if (!(c.freq_scale >= 0.0 && c.freq_scale <= 1.0))
    throw argument_error("growth: freq_scale must be in [0, 1]");
  if (!(c.presence_scale > 0.0)) throw argument_error("growth: presence_scale must be positive");
  if (c.step_seconds < 1) throw argument_error("growth: step_seconds must be >= 1");

  const std::size_t n = static_cast<std::size_t>(c.population);
  if (!c.explicit_freq.empty()) {
    if (c.explicit_freq.size() != n) throw argument_error("growth: explicit_freq size mismatch");
    for (double f : c.explicit_freq)
      if (!(f >= 0.0 && f <= 1.0)) throw argument_error("growth: explicit_freq out of [0, 1]");
  }
  if (!c.explicit_presence.empty()) {
    if (c.explicit_presence.size() != n)
      throw argument_error("growth: explicit_presence size mismatch");
    for (double p : c.explicit_presence)
      if (!(p > 0.0)) throw argument_error("growth: explicit_presence must be positive");
  }
  if (!c.labels.empty() && c.labels.size() != n)
    throw argument_error("growth: labels size mismatch");
}

inline std::vector<std::string> default_labels(std::int64_t n) {
  std::size_t width = 1;
  for (std::int64_t v = n - 1; v >= 10; v /= 10) ++width;
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    labels[i] = "n" + std::string(width - digits.size(), '0') + digits;
  }
  return labels;
}

struct StepEncounter {
  std::uint32_t a = 0;  // node indices, a < b
  std::uint32_t b = 0;
  std::int64_t first_step = 0;  // inclusive, 1-based
  std::int64_t last_step = 0;   // inclusive
};

}  // namespace detail

/// Runs the growth simulation. Deterministic: a given config (seed
/// included) always yields the same trace. Sampling draws f for nodes
/// 0..N-1, then p for nodes 0..N-1; one activation roll per inactive node
/// per step, in node order.
inline GrowthResult simulate(const GrowthConfig& config) {
  detail::validate_growth_config(config);
  const std::size_t n = static_cast<std::size_t>(config.population);

  Rng rng(config.seed);
  std::vector<double> f(n), p(n);
  if (!config.explicit_freq.empty()) {
    f = config.explicit_freq;
  } else {
    double max_sample = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = rng.pareto(config.freq_exponent, 1.0);
      max_sample = std::max(max_sample, f[i]);
    }
    for (double& v : f) v = std::min(1.0, config.freq_scale * v / max_sample);
  }
  if (!config.explicit_presence.empty()) {
    p = config.explicit_presence;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      p[i] = config.presence_scale * rng.pareto(config.presence_exponent, 1.0);
  }

  std::vector<std::int64_t> active_until(n, 0);  // step index; 0 = never activated
  std::vector<std::int64_t> inactive_steps(n, 1);
  std::vector<char> is_active(n, 0);
  std::vector<std::uint32_t> active_list;
  std::vector<std::uint32_t> entered, departed, next_list;

  std::unordered_map<std::uint64_t, std::int64_t> open;  // pair key -> first co-active step
  std::vector<detail::StepEncounter> events;
  const auto pair_key = [](std::uint32_t i, std::uint32_t j) {
    return (static_cast<std::uint64_t>(std::min(i, j)) << 32) | std::max(i, j);
  };

  for (std::int64_t t = 1; t <= config.steps; ++t) {
    entered.clear();
    departed.clear();

    // Activation rolls for every node not active at t, in node order.
    for (std::size_t i = 0; i < n; ++i) {
      if (active_until[i] >= t) continue;
      if (rng.next_double() < f[i]) {
        // Dwell beyond the horizon is equivalent to dwelling until the end,
        // so clamp before rounding to keep the arithmetic in range.
        const double basis =
            std::min(p[i] * static_cast<double>(inactive_steps[i]), static_cast<double>(config.steps));
        const std::int64_t dwell = std::max<std::int64_t>(1, std::llround(basis));
        active_until[i] = t + dwell - 1;
        inactive_steps[i] = 0;
        if (!is_active[i]) entered.push_back(static_cast<std::uint32_t>(i));
      } else {
        ++inactive_steps[i];
      }
    }

    // Partition the previous active set into stayers and departures.
    next_list.clear();
    for (std::uint32_t i : active_list) {
      if (active_until[i] >= t)
        next_list.push_back(i);
      else
        departed.push_back(i);
    }

    for (std::uint32_t d : departed) {
      is_active[d] = 0;
      for (std::uint32_t q : active_list) {
        if (q == d) continue;
        const auto it = open.find(pair_key(d, q));
        if (it != open.end()) {
          events.push_back(detail::StepEncounter{std::min(d, q), std::max(d, q), it->second, t - 1});
          open.erase(it);
        }
      }
    }

    for (std::uint32_t e : entered) {
      is_active[e] = 1;
      next_list.push_back(e);
    }
    active_list.swap(next_list);

    for (std::uint32_t e : entered) {
      for (std::uint32_t q : active_list) {
        if (q == e) continue;
        open.emplace(pair_key(e, q), t);
      }
    }
  }

  for (const auto& [key, start] : open) {
    const std::uint32_t i = static_cast<std::uint32_t>(key >> 32);
    const std::uint32_t j = static_cast<std::uint32_t>(key & 0xffffffffu);
    events.push_back(detail::StepEncounter{i, j, start, config.steps});
  }

  const std::vector<std::string> labels =
      config.labels.empty() ? detail::default_labels(config.population) : config.labels;

  GrowthResult result;
  result.trace.devices.insert(labels.begin(), labels.end());
  result.trace.encounters.reserve(events.size());
  for (const detail::StepEncounter& ev : events) {
    const std::string& la = labels[ev.a];
    const std::string& lb = labels[ev.b];
    const bool flip = lb < la;
    result.trace.encounters.push_back(Encounter{flip ? lb : la, flip ? la : lb, "sim",
                                                (ev.first_step - 1) * config.step_seconds,
                                                ev.last_step * config.step_seconds});
  }
  std::sort(result.trace.encounters.begin(), result.trace.encounters.end(), encounter_less);
  result.graph = aggregate(result.trace);
  return result;
}

}  // namespace encnet
