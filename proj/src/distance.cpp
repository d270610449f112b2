#include "cusp/distance.hpp"

#include <algorithm>
#include <deque>

namespace cusp {

std::vector<CuspedVertex> DistanceField::path_to(const CuspedVertex& v) const {
  std::vector<CuspedVertex> rev{v};
  CuspedVertex cur = v;
  while (!(cur == source)) {
    auto it = parents.find(cur);
    if (it == parents.end()) throw std::logic_error("path_to needs a field built with record_parents");
    cur = it->second;
    rev.push_back(cur);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

DistanceField certified_bfs(const CuspedGraph& graph, const CuspedVertex& source, const BfsOptions& opts) {
  if (!graph.in_window(source)) throw std::invalid_argument("BFS source outside the window");
  if (opts.contains && !opts.contains(source)) throw std::invalid_argument("BFS source outside the region");
  auto is_boundary = [&](const CuspedVertex& v) {
    return opts.boundary ? opts.boundary(v) : graph.is_boundary(v);
  };

  DistanceField field;
  field.source = source;
  field.values.reserve(1024);
  field.values.emplace(source, 0);
  if (opts.record_parents) field.parents.reserve(1024);
  if (is_boundary(source)) field.r_bad = 0;

  std::deque<CuspedVertex> frontier{source};
  int dist = 0;
  while (!frontier.empty()) {
    // stop once further layers can no longer be certified (plus slack)
    if (opts.horizon >= 0 && dist >= opts.horizon) break;
    if (opts.horizon < 0 && field.r_bad < kUnbounded && dist >= field.r_bad + opts.slack) break;
    std::deque<CuspedVertex> next;
    for (const CuspedVertex& v : frontier) {
      for (CuspedVertex& w : graph.neighbors(v)) {
        if (opts.contains && !opts.contains(w)) continue;
        auto [it, fresh] = field.values.emplace(w, dist + 1);
        if (!fresh) continue;
        if (field.values.size() > opts.max_vertices) {
          throw SizeLimitError("certified_bfs exceeds vertex cap");
        }
        if (opts.record_parents) field.parents.emplace(it->first, v);
        if (is_boundary(it->first)) field.r_bad = std::min(field.r_bad, dist + 1);
        next.push_back(it->first);
      }
    }
    frontier = std::move(next);
    ++dist;
    field.horizon_completed = dist;
  }
  if (frontier.empty()) field.horizon_completed = kUnbounded;
  return field;
}

std::vector<CuspedVertex> certified_slab_vertices(const CuspedGraph& graph, const DistanceField& field,
                                                  int i, const Word& rep, int m) {
  std::vector<CuspedVertex> out;
  for (const auto& [v, d] : field.values) {
    if (d > field.cert_limit()) continue;
    if (m == 0) {
      if (v.level != 0) continue;
      if (graph.group().coset_representative(v.elem, i) != rep) continue;
    } else {
      if (v.level != m || v.peripheral != i) continue;
      if (graph.coset_rep(v) != rep) continue;
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), vertex_less);
  return out;
}

CuspedVertex closest_level_vertex(const CuspedGraph& graph, const DistanceField& field, int i,
                                  const Word& rep, int m) {
  std::optional<CuspedVertex> best;
  int best_d = kUnbounded;
  for (const CuspedVertex& v : certified_slab_vertices(graph, field, i, rep, m)) {
    const int d = *field.certified_value(v);
    if (d < best_d || (d == best_d && best && vertex_less(v, *best))) {
      best = v;
      best_d = d;
    }
  }
  if (!best) {
    throw InconclusiveError("no certified vertex of the requested slab is visible; enlarge the window");
  }
  return *best;
}

RestrictedSearch restricted_shortest_path(const CuspedGraph& graph, const CuspedVertex& from,
                                          const CuspedVertex& to,
                                          const std::function<bool(const CuspedVertex&)>& contains,
                                          int max_len, std::size_t max_vertices) {
  RestrictedSearch result;
  if (!contains(from) || !contains(to)) return result;
  if (from == to) {
    result.path = std::vector<CuspedVertex>{from};
    return result;
  }
  std::unordered_map<CuspedVertex, CuspedVertex, CuspedVertexHash> parent;
  std::unordered_map<CuspedVertex, int, CuspedVertexHash> dist;
  std::deque<CuspedVertex> frontier{from};
  dist.emplace(from, 0);
  if (graph.is_boundary(from)) result.window_limited = true;
  int d = 0;
  while (!frontier.empty()) {
    if (max_len >= 0 && d >= max_len) break;
    std::deque<CuspedVertex> next;
    for (const CuspedVertex& v : frontier) {
      for (CuspedVertex& w : graph.neighbors(v)) {
        if (!contains(w)) continue;
        auto [it, fresh] = dist.emplace(w, d + 1);
        if (!fresh) continue;
        if (dist.size() > max_vertices) throw SizeLimitError("restricted search exceeds vertex cap");
        parent.emplace(it->first, v);
        if (graph.is_boundary(it->first)) result.window_limited = true;
        if (it->first == to) {
          std::vector<CuspedVertex> rev{to};
          CuspedVertex cur = to;
          while (!(cur == from)) {
            cur = parent.at(cur);
            rev.push_back(cur);
          }
          std::reverse(rev.begin(), rev.end());
          result.path = std::move(rev);
          result.explored = dist.size();
          return result;
        }
        next.push_back(it->first);
      }
    }
    frontier = std::move(next);
    ++d;
  }
  result.explored = dist.size();
  return result;
}

FieldProvider::FieldProvider(const CuspedGraph& graph, BfsOptions opts, std::size_t cache_limit)
    : graph_(&graph), opts_(std::move(opts)), cache_limit_(cache_limit) {}

const DistanceField& FieldProvider::field_for(const CuspedVertex& source) {
  auto it = cache_.find(source);
  if (it != cache_.end()) return *it->second;
  if (cache_.size() >= cache_limit_) {
    // deterministic FIFO eviction
    const CuspedVertex oldest = order_.front();
    order_.erase(order_.begin());
    cache_.erase(oldest);
  }
  auto field = std::make_shared<DistanceField>(certified_bfs(*graph_, source, opts_));
  order_.push_back(source);
  return *cache_.emplace(source, std::move(field)).first->second;
}

std::optional<int> FieldProvider::distance(const CuspedVertex& u, const CuspedVertex& v) {
  const CuspedVertex& src = vertex_less(u, v) ? u : v;
  const CuspedVertex& dst = vertex_less(u, v) ? v : u;
  return field_for(src).certified_value(dst);
}

int FieldProvider::lower_bound(const CuspedVertex& u, const CuspedVertex& v) {
  const CuspedVertex& src = vertex_less(u, v) ? u : v;
  const CuspedVertex& dst = vertex_less(u, v) ? v : u;
  return field_for(src).lower_bound(dst);
}

}  // namespace cusp
