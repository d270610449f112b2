#pragma once

// Independent reference implementations the certified code is checked against.
// Everything here is deliberately naive: explicit edge sets, plain queues,
// closed-form counts. Nothing from the library's distance machinery is reused.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cusp/cusped.hpp"
#include "cusp/distance.hpp"
#include "cusp/horoball.hpp"
#include "cusp/level_graph.hpp"

namespace cusp::oracle {

/// Explicit horoball built straight from the three edge rules with
/// Floyd-Warshall base distances. Vertices are indexed base * (D+1) + level.
struct ExplicitHoroball {
  int n = 0, depth = 0;
  std::vector<std::vector<int>> adj;

  int id(int base, int level) const { return base * (depth + 1) + level; }
  int vertex_count() const { return n * (depth + 1); }
};

ExplicitHoroball materialize_horoball(const LevelGraph& g, int depth_cap);

/// Plain BFS distance over an explicit adjacency list; -1 when unreachable.
std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source);

/// Closed-form free-abelian rank-2 ball size: 2r^2 + 2r + 1.
std::uint64_t z2_ball_size(int radius);

/// Materializes a region of a cusped window (vertex set + adjacency) by
/// breadth-first closure from a seed, capped. Used as the independent side of
/// the connecting-path search equivalence check.
struct ExplicitRegion {
  std::vector<CuspedVertex> vertices;
  std::map<int, std::vector<int>> adj;
  std::optional<int> index_of(const CuspedVertex& v) const;
};

ExplicitRegion materialize_region(const CuspedGraph& graph, const CuspedVertex& seed,
                                  const std::function<bool(const CuspedVertex&)>& contains,
                                  std::size_t cap);

std::optional<int> region_bfs_distance(const ExplicitRegion& region, const CuspedVertex& from,
                                       const CuspedVertex& to);

}  // namespace cusp::oracle
