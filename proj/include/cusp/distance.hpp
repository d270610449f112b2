#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cusp/cusped.hpp"

namespace cusp {

constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

struct BfsOptions {
  int horizon = -1;                      // -1: run to r_bad + slack
  int slack = 2;
  std::size_t max_vertices = 4'000'000;  // explicit cap, never silent truncation
  bool record_parents = false;
  // optional region restriction; membership is only evaluated in-window
  std::function<bool(const CuspedVertex&)> contains;
  // optional override of the "has an out-of-window neighbour inside the
  // region's untruncated space" predicate; defaults to CuspedGraph::is_boundary
  std::function<bool(const CuspedVertex&)> boundary;
};

/// A BFS distance field over the truncated space with an exactness
/// certificate. Writing b for the smallest value of any vertex that has an
/// out-of-window neighbour (r_bad) and h for the last fully completed BFS
/// layer, the stored values satisfy:
///   - values(v) is the distance in the truncated graph, for values(v) <= h;
///   - values(v) <= min(b, h) implies values(v) equals the distance in the
///     full untruncated space (no path can leave the window and do better);
///   - any vertex without a certified value has full-space distance
///     >= min(b, h) + 1.
class DistanceField {
 public:
  CuspedVertex source;
  std::unordered_map<CuspedVertex, int, CuspedVertexHash> values;
  std::unordered_map<CuspedVertex, CuspedVertex, CuspedVertexHash> parents;
  int r_bad = kUnbounded;
  int horizon_completed = 0;

  int cert_limit() const { return std::min(r_bad, horizon_completed); }

  bool certified(const CuspedVertex& v) const {
    auto it = values.find(v);
    return it != values.end() && it->second <= cert_limit();
  }

  std::optional<int> certified_value(const CuspedVertex& v) const {
    auto it = values.find(v);
    if (it == values.end() || it->second > cert_limit()) return std::nullopt;
    return it->second;
  }

  /// Sound lower bound on the full-space distance from source to v.
  int lower_bound(const CuspedVertex& v) const {
    auto cv = certified_value(v);
    if (cv) return *cv;
    return cert_limit() >= kUnbounded ? kUnbounded : cert_limit() + 1;
  }

  /// Path from source to v along BFS parents (requires record_parents).
  std::vector<CuspedVertex> path_to(const CuspedVertex& v) const;
};

DistanceField certified_bfs(const CuspedGraph& graph, const CuspedVertex& source,
                            const BfsOptions& opts = {});

struct InconclusiveError : std::runtime_error {
  explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

/// The vertex of the level-m slab of the horoball over (i, rep) closest to
/// the field's source, shortlex tie-break. The certificate makes a certified
/// candidate automatically the global minimiser; throws InconclusiveError when
/// the field shows no certified slab vertex.
CuspedVertex closest_level_vertex(const CuspedGraph& graph, const DistanceField& field, int i,
                                  const Word& rep, int m);

/// Certified vertices of a horoball level slab visible in a field.
std::vector<CuspedVertex> certified_slab_vertices(const CuspedGraph& graph, const DistanceField& field,
                                                  int i, const Word& rep, int m);

struct RestrictedSearch {
  std::optional<std::vector<CuspedVertex>> path;  // shortest region path in-window
  bool window_limited = false;  // search or region touched the window rim
  std::size_t explored = 0;
};

/// Shortest path from one vertex to another inside a region of the window.
/// max_len < 0 searches without a length bound.
RestrictedSearch restricted_shortest_path(const CuspedGraph& graph, const CuspedVertex& from,
                                          const CuspedVertex& to,
                                          const std::function<bool(const CuspedVertex&)>& contains,
                                          int max_len, std::size_t max_vertices = 4'000'000);

/// Abstract certified distance source: either cached certified BFS fields or
/// the closed-form metric of a single-horoball space.
class DistanceProvider {
 public:
  virtual ~DistanceProvider() = default;
  virtual std::optional<int> distance(const CuspedVertex& u, const CuspedVertex& v) = 0;
  virtual int lower_bound(const CuspedVertex& u, const CuspedVertex& v) = 0;
  virtual const char* describe() const = 0;
};

class FieldProvider : public DistanceProvider {
 public:
  FieldProvider(const CuspedGraph& graph, BfsOptions opts = {}, std::size_t cache_limit = 512);
  std::optional<int> distance(const CuspedVertex& u, const CuspedVertex& v) override;
  int lower_bound(const CuspedVertex& u, const CuspedVertex& v) override;
  const char* describe() const override { return "certified-bfs"; }
  const DistanceField& field_for(const CuspedVertex& source);

 private:
  const CuspedGraph* graph_;
  BfsOptions opts_;
  std::size_t cache_limit_;
  std::unordered_map<CuspedVertex, std::shared_ptr<DistanceField>, CuspedVertexHash> cache_;
  std::vector<CuspedVertex> order_;
};

class ExactProvider : public DistanceProvider {
 public:
  explicit ExactProvider(const CuspedGraph& graph) : metric_(graph) {}
  std::optional<int> distance(const CuspedVertex& u, const CuspedVertex& v) override {
    return metric_.distance(u, v);
  }
  int lower_bound(const CuspedVertex& u, const CuspedVertex& v) override { return metric_.distance(u, v); }
  const char* describe() const override { return "exact-horoball"; }
  const ExactHoroballMetric& metric() const { return metric_; }

 private:
  ExactHoroballMetric metric_;
};

}  // namespace cusp
