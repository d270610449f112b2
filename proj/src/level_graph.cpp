#include "cusp/level_graph.hpp"

#include <algorithm>
#include <queue>

namespace cusp {

LevelGraph::LevelGraph(int vertex_count, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels)
    : n_(vertex_count), adj_(static_cast<std::size_t>(vertex_count)), labels_(std::move(labels)) {
  if (vertex_count <= 0) throw std::invalid_argument("level graph needs vertices");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& row : adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  if (labels_.empty()) {
    for (int v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
  }
  if (labels_.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("label count mismatch");
  dist_rows_.resize(static_cast<std::size_t>(n_));
  if (!connected()) throw std::invalid_argument("level graph must be connected");
}

LevelGraph::LevelGraph(const LevelGraph& other)
    : n_(other.n_), adj_(other.adj_), labels_(other.labels_) {
  dist_rows_.resize(static_cast<std::size_t>(n_));
}

LevelGraph LevelGraph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return LevelGraph(n, std::move(e));
}

LevelGraph LevelGraph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return LevelGraph(n, std::move(e));
}

LevelGraph LevelGraph::grid(int w, int h) {
  std::vector<std::pair<int, int>> e;
  auto id = [w](int x, int y) { return y * w + x; };
  std::vector<std::string> labels;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      labels.push_back(std::to_string(x) + "," + std::to_string(y));
      if (x + 1 < w) e.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < h) e.emplace_back(id(x, y), id(x, y + 1));
    }
  }
  return LevelGraph(w * h, std::move(e), std::move(labels));
}

LevelGraph LevelGraph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return LevelGraph(n, std::move(e));
}

LevelGraph LevelGraph::star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return LevelGraph(leaves + 1, std::move(e));
}

bool LevelGraph::adjacent(int u, int v) const {
  const auto& row = adj_.at(static_cast<std::size_t>(u));
  return std::binary_search(row.begin(), row.end(), v);
}

const std::vector<int>& LevelGraph::row(int source) const {
  auto& slot = dist_rows_.at(static_cast<std::size_t>(source));
  if (!slot) {
    auto dist = std::make_unique<std::vector<int>>(static_cast<std::size_t>(n_), -1);
    std::queue<int> q;
    (*dist)[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        if ((*dist)[static_cast<std::size_t>(v)] < 0) {
          (*dist)[static_cast<std::size_t>(v)] = (*dist)[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    slot = std::move(dist);
  }
  return *slot;
}

int LevelGraph::distance(int u, int v) const {
  const int d = row(u).at(static_cast<std::size_t>(v));
  if (d < 0) throw std::logic_error("disconnected level graph");
  return d;
}

std::vector<int> LevelGraph::geodesic(int u, int v) const {
  const auto& d = row(u);
  std::vector<int> rev{v};
  int cur = v;
  while (cur != u) {
    for (int w : adj_[static_cast<std::size_t>(cur)]) {
      if (d[static_cast<std::size_t>(w)] == d[static_cast<std::size_t>(cur)] - 1) {
        cur = w;
        break;
      }
    }
    rev.push_back(cur);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

bool LevelGraph::connected() const {
  const auto& r = row(0);
  return std::all_of(r.begin(), r.end(), [](int d) { return d >= 0; });
}

int LevelGraph::diameter() const {
  if (diameter_ < 0) {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, *std::max_element(row(v).begin(), row(v).end()));
    diameter_ = best;
  }
  return diameter_;
}

}  // namespace cusp
