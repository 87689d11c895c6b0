#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace encnet {

/// Resolves a thread-count request: explicit value wins, then the
/// ENCOUNTER_NET_THREADS environment variable, then hardware concurrency.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENCOUNTER_NET_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs body(begin, end) over static chunks of [0, n). Results must be
/// written to per-index or per-chunk slots so the outcome does not depend
/// on scheduling; chunk boundaries depend only on n and threads.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  if (n == 0) return;
  const std::size_t t = std::min<std::size_t>(std::max(threads, 1), n);
  if (t == 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + t - 1) / t;
  std::vector<std::thread> workers;
  workers.reserve(t - 1);
  for (std::size_t w = 1; w < t; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    workers.emplace_back([&body, begin, end = std::min(begin + chunk, n)] { body(begin, end); });
  }
  body(std::size_t{0}, std::min(chunk, n));
  for (auto& th : workers) th.join();
}

}  // namespace encnet
