#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "cusp/level_graph.hpp"

namespace cusp {

struct HoroVertex {
  int base = 0;
  int level = 0;
  friend bool operator==(const HoroVertex&, const HoroVertex&) = default;
  friend auto operator<=>(const HoroVertex&, const HoroVertex&) = default;
};

struct DepthCapError : std::runtime_error {
  explicit DepthCapError(const std::string& what) : std::runtime_error(what) {}
};

/// The combinatorial horoball over a finite level graph, truncated at a depth
/// cap. Vertices are (base, level) with level in [0, depth_cap]; edges are
///   - the level-graph edges at level 0,
///   - a single edge between (v,k) and (w,k) when 0 < d(v,w) <= 2^k, k > 0,
///   - a vertical edge between (v,k) and (v,k+1).
/// Adjacency above level 0 is generated on demand from the level-graph
/// distances; nothing is materialised as an edge list.
class HoroballGraph {
 public:
  HoroballGraph(std::shared_ptr<const LevelGraph> base, int depth_cap);

  const LevelGraph& level_graph() const { return *base_; }
  int depth_cap() const { return depth_cap_; }
  std::int64_t vertex_count() const;

  static int depth(const HoroVertex& v) { return v.level; }
  bool contains(const HoroVertex& v) const;

  /// Neighbours inside the truncated graph, deterministic order
  /// (vertical down, vertical up, then horizontal by base index).
  std::vector<HoroVertex> neighbors(const HoroVertex& v) const;

  /// Horizontal reach at a level: true iff the level-k edge (v,k)-(w,k) exists.
  bool horizontal_edge(int level, int v, int w) const;

  /// Distance inside the level-m subgraph only; nullopt if disconnected there.
  std::optional<int> level_distance(int m, const HoroVertex& x, const HoroVertex& y) const;

  /// All vertices of level depth(z) within level-metric distance n of z.
  std::vector<HoroVertex> level_ball(const HoroVertex& z, int n) const;

  /// Exact distance in the full (infinitely deep) horoball. Every geodesic
  /// between levels <= l stays within depth max(l, min_safe_depth()), so the
  /// minimisation below is over a finite apex range:
  ///   d((v,j),(w,k)) = min_a (a-j) + (a-k) + ceil(d(v,w)/2^a).
  int exact_distance(const HoroVertex& x, const HoroVertex& y) const;

  /// Depth at which every geodesic between any two truncation vertices is
  /// already present: ceil(log2(diam)) + 1.
  int min_safe_depth() const;

  /// True when the truncated BFS distance between x and y equals the
  /// full-horoball distance (depth cap at least max(levels, min_safe_depth)).
  bool pair_certified(const HoroVertex& x, const HoroVertex& y) const;

  /// Geodesic of shape (vertical up, horizontal of length <= 3, vertical
  /// down) realising exact_distance. Throws DepthCapError when every optimal
  /// shape needs an apex above the cap.
  std::vector<HoroVertex> standard_geodesic(const HoroVertex& x, const HoroVertex& y) const;

  struct TwoCellCensus {
    std::int64_t horizontal_triangles = 0;  // three horizontal edges
    std::int64_t vertical_squares = 0;      // two horizontal + two vertical
    std::int64_t vertical_pentagons = 0;    // three horizontal + two vertical, non-degenerate
  };
  /// Combinatorial count of the attached 2-cells up to a level bound; the
  /// cells play no metric role anywhere in this library.
  TwoCellCensus two_cell_census(int max_level) const;

  void write_edge_list(std::ostream& os) const;
  void write_dot(std::ostream& os, std::size_t max_edges = 5000) const;

 private:
  long long reach(int level) const;  // horizontal span 2^level, saturated

  std::shared_ptr<const LevelGraph> base_;
  int depth_cap_ = 0;
};

struct HoroVertexHash {
  std::size_t operator()(const HoroVertex& v) const {
    return std::hash<long long>()((static_cast<long long>(v.base) << 20) ^ v.level);
  }
};

/// Length of an edge path given as a vertex sequence.
inline int path_length(const std::vector<HoroVertex>& p) { return static_cast<int>(p.size()) - 1; }

}  // namespace cusp
