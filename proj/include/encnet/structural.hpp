#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "encnet/parallel.hpp"
#include "encnet/types.hpp"

namespace encnet {

/// The eight aggregate-graph statistics. Path statistics (diameter, average
/// length) are taken over the largest connected component only; average
/// clustering is the mean local coefficient over all nodes, with nodes of
/// degree < 2 contributing 0.
struct StructuralSummary {
  std::int64_t size = 0;
  std::int64_t edges = 0;
  double density = 0.0;
  std::int64_t core = 0;
  double avg_degree = 0.0;
  std::int64_t diameter = 0;
  double avg_path_length = 0.0;
  double avg_clustering = 0.0;
};

struct DegreeProfile {
  std::map<std::int64_t, std::int64_t> degree_counts;
  std::map<std::int64_t, double> ck_profile;  // degree -> mean local clustering
};

/// density = 2E / (N (N - 1)); 0 when N < 2.
inline double graph_density(std::int64_t nodes, std::int64_t edges) {
  if (nodes < 2) return 0.0;
  return 2.0 * static_cast<double>(edges) /
         (static_cast<double>(nodes) * static_cast<double>(nodes - 1));
}

/// Mean degree k = 2E / N.
inline double mean_degree(std::int64_t nodes, std::int64_t edges) {
  return 2.0 * static_cast<double>(edges) / static_cast<double>(nodes);
}

namespace detail {

/// Index-based view of an AggregateGraph: ids sorted, adjacency sorted.
struct IndexedGraph {
  std::vector<std::string> ids;
  std::vector<std::vector<std::int32_t>> adj;
};

inline IndexedGraph index_graph(const AggregateGraph& g) {
  IndexedGraph ig;
  ig.ids.assign(g.nodes.begin(), g.nodes.end());
  ig.adj.resize(ig.ids.size());
  auto index_of = [&](const std::string& id) {
    return static_cast<std::int32_t>(
        std::lower_bound(ig.ids.begin(), ig.ids.end(), id) - ig.ids.begin());
  };
  for (const auto& [key, data] : g.edges) {
    const std::int32_t u = index_of(key.first);
    const std::int32_t v = index_of(key.second);
    ig.adj[u].push_back(v);
    ig.adj[v].push_back(u);
  }
  for (auto& nbrs : ig.adj) std::sort(nbrs.begin(), nbrs.end());
  return ig;
}

/// Triangles through each vertex, by sorted-adjacency intersection.
inline std::vector<std::int64_t> triangles_per_node(const IndexedGraph& g, int threads) {
  std::vector<std::int64_t> tri(g.adj.size(), 0);
  parallel_for(g.adj.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const auto& nv = g.adj[v];
      std::int64_t t = 0;
      for (std::size_t i = 0; i < nv.size(); ++i) {
        for (std::size_t j = i + 1; j < nv.size(); ++j) {
          const auto& nu = g.adj[nv[i]];
          if (std::binary_search(nu.begin(), nu.end(), nv[j])) ++t;
        }
      }
      tri[v] = t;
    }
  });
  return tri;
}

inline std::vector<double> local_clustering(const IndexedGraph& g, int threads) {
  const std::vector<std::int64_t> tri = triangles_per_node(g, threads);
  std::vector<double> c(g.adj.size(), 0.0);
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    const double d = static_cast<double>(g.adj[v].size());
    if (d >= 2.0) c[v] = 2.0 * static_cast<double>(tri[v]) / (d * (d - 1.0));
  }
  return c;
}

inline std::vector<std::int32_t> component_labels(const IndexedGraph& g) {
  std::vector<std::int32_t> comp(g.adj.size(), -1);
  std::int32_t next = 0;
  std::vector<std::int32_t> stack;
  for (std::size_t s = 0; s < g.adj.size(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(static_cast<std::int32_t>(s));
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      for (std::int32_t w : g.adj[v])
        if (comp[w] == -1) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

struct PathStats {
  std::int64_t diameter = 0;
  std::int64_t distance_sum = 0;  // over ordered reachable pairs
};

/// BFS from every member of `sources`; distances restricted to their
/// component by construction. Integer partial sums keep the result
/// independent of the thread count.
inline PathStats path_stats(const IndexedGraph& g, const std::vector<std::int32_t>& sources,
                            int threads) {
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(sources.size()) > 0
                                                       ? static_cast<int>(sources.size())
                                                       : 1));
  std::vector<PathStats> partial(t);
  parallel_for(sources.size(), t, [&](std::size_t begin, std::size_t end) {
    const std::size_t chunk = (sources.size() + t - 1) / t;
    PathStats local;
    std::vector<std::int32_t> dist(g.adj.size());
    std::vector<std::int32_t> queue;
    for (std::size_t si = begin; si < end; ++si) {
      std::fill(dist.begin(), dist.end(), -1);
      queue.clear();
      queue.push_back(sources[si]);
      dist[sources[si]] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::int32_t v = queue[head];
        for (std::int32_t w : g.adj[v])
          if (dist[w] == -1) {
            dist[w] = dist[v] + 1;
            queue.push_back(w);
            local.distance_sum += dist[w];
            local.diameter = std::max<std::int64_t>(local.diameter, dist[w]);
          }
      }
    }
    partial[begin / chunk] = local;
  });
  PathStats total;
  for (const PathStats& p : partial) {
    total.distance_sum += p.distance_sum;
    total.diameter = std::max(total.diameter, p.diameter);
  }
  return total;
}

}  // namespace detail

/// Computes all eight summary statistics. Throws argument_error on an empty
/// graph; a single node yields size 1, core 1 and zeros elsewhere.
inline StructuralSummary summarize(const AggregateGraph& g, int threads = 1) {
  if (g.nodes.empty()) throw argument_error("summarize: empty graph");

  const detail::IndexedGraph ig = detail::index_graph(g);
  const std::int64_t n = static_cast<std::int64_t>(ig.ids.size());
  const std::int64_t m = static_cast<std::int64_t>(g.edges.size());

  StructuralSummary s;
  s.size = n;
  s.edges = m;
  s.density = graph_density(n, m);
  s.avg_degree = mean_degree(n, m);

  // Largest component; ties pick the one with the smallest node index.
  const std::vector<std::int32_t> comp = detail::component_labels(ig);
  std::vector<std::int64_t> comp_size;
  for (std::int32_t c : comp) {
    if (c >= static_cast<std::int32_t>(comp_size.size())) comp_size.resize(c + 1, 0);
    ++comp_size[c];
  }
  std::int32_t largest = 0;
  for (std::size_t c = 1; c < comp_size.size(); ++c)
    if (comp_size[c] > comp_size[largest]) largest = static_cast<std::int32_t>(c);
  s.core = comp_size[largest];

  std::vector<std::int32_t> members;
  members.reserve(s.core);
  for (std::size_t v = 0; v < comp.size(); ++v)
    if (comp[v] == largest) members.push_back(static_cast<std::int32_t>(v));

  if (s.core >= 2) {
    const detail::PathStats ps = detail::path_stats(ig, members, threads);
    s.diameter = ps.diameter;
    s.avg_path_length = static_cast<double>(ps.distance_sum) /
                        (static_cast<double>(s.core) * static_cast<double>(s.core - 1));
  }

  const std::vector<double> c = detail::local_clustering(ig, threads);
  double sum = 0.0;
  for (double cv : c) sum += cv;  // index order; thread-count independent
  s.avg_clustering = sum / static_cast<double>(n);
  return s;
}

/// Exact degree histogram plus mean local clustering per present degree.
inline DegreeProfile degree_profile(const AggregateGraph& g, int threads = 1) {
  const detail::IndexedGraph ig = detail::index_graph(g);
  const std::vector<double> c = detail::local_clustering(ig, threads);

  DegreeProfile p;
  std::map<std::int64_t, double> csum;
  for (std::size_t v = 0; v < ig.adj.size(); ++v) {
    const std::int64_t k = static_cast<std::int64_t>(ig.adj[v].size());
    ++p.degree_counts[k];
    csum[k] += c[v];
  }
  for (const auto& [k, total] : csum)
    p.ck_profile[k] = total / static_cast<double>(p.degree_counts[k]);
  return p;
}

}  // namespace encnet
