#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusp {

/// A finite connected simple graph: the base layer a horoball is built over.
/// Distances are plain BFS, cached per source.
class LevelGraph {
 public:
  LevelGraph(int vertex_count, std::vector<std::pair<int, int>> edges,
             std::vector<std::string> labels = {});
  LevelGraph(const LevelGraph& other);  // distance caches reset
  LevelGraph& operator=(const LevelGraph&) = delete;
  LevelGraph(LevelGraph&&) = default;
  LevelGraph& operator=(LevelGraph&&) = default;

  static LevelGraph path(int n);
  static LevelGraph cycle(int n);
  static LevelGraph grid(int w, int h);
  static LevelGraph complete(int n);
  static LevelGraph star(int leaves);

  int vertex_count() const { return n_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  bool adjacent(int u, int v) const;
  const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }

  int distance(int u, int v) const;  // throws if disconnected (never, by invariant)
  /// Some geodesic from u to v; deterministic (smallest-index predecessor).
  std::vector<int> geodesic(int u, int v) const;
  int diameter() const;
  bool connected() const;

 private:
  const std::vector<int>& row(int source) const;

  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  mutable std::vector<std::unique_ptr<std::vector<int>>> dist_rows_;
  mutable int diameter_ = -1;
};

}  // namespace cusp
