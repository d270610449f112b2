#include "cusp/cusped.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace cusp {

bool vertex_less(const CuspedVertex& a, const CuspedVertex& b) {
  if (a.peripheral != b.peripheral) return a.peripheral < b.peripheral;
  if (a.level != b.level) return a.level < b.level;
  return shortlex_less(a.elem, b.elem);
}

CuspedGraph::CuspedGraph(MarkedGroup group, int base_radius, int depth_cap, B2Mode b2)
    : group_(std::move(group)), R_(base_radius), D_(depth_cap), b2_(b2) {
  if (R_ < 1) throw std::invalid_argument("base radius must be >= 1");
  if (D_ < 1) throw std::invalid_argument("depth cap must be >= 1");
  pballs_.resize(static_cast<std::size_t>(group_.peripheral_count()));
}

bool CuspedGraph::in_window(const CuspedVertex& v) const {
  if (v.level < 0 || v.level > D_) return false;
  if ((v.level == 0) != (v.peripheral < 0)) return false;
  if (v.peripheral >= group_.peripheral_count()) return false;
  return group_.length(v.elem) <= R_;
}

bool CuspedGraph::is_boundary(const CuspedVertex& v) const {
  if (v.level == 0) return group_.length(v.elem) >= R_;
  if (v.level == D_) return true;
  // farthest horizontal neighbour of (x,k) sits at word length |x| + 2^k
  const long long span = (v.level >= 32) ? (1LL << 31) : (1LL << v.level);
  return group_.length(v.elem) + span > R_;
}

const std::vector<Word>& CuspedGraph::peripheral_ball_cached(int i, int radius) const {
  auto& slot = pballs_.at(static_cast<std::size_t>(i))[radius];
  if (!slot) {
    slot = std::make_shared<const std::vector<Word>>(group_.peripheral_ball(i, radius, pball_cap_));
  }
  return *slot;
}

const std::vector<Word>& CuspedGraph::coset_window_cached(int i, const Word& rep) const {
  auto& slot = coset_windows_[{i, rep}];
  if (!slot) {
    std::vector<Word> members;
    const int budget = R_ - group_.length(rep);
    if (budget >= 0) {
      for (const Word& q : group_.peripheral_ball(i, budget, pball_cap_)) {
        members.push_back(group_.multiply(rep, q));
      }
      std::sort(members.begin(), members.end(), shortlex_less);
    }
    slot = std::make_shared<const std::vector<Word>>(std::move(members));
  }
  return *slot;
}

// Horizontal edges of (x, k): targets w in the coset with 0 < d_P(x, w) <= 2^k
// and |w| <= R. When the span covers the whole coset window it is cheaper to
// walk the cached window members than the span ball.
void CuspedGraph::horizontal_neighbors(const CuspedVertex& v, std::vector<CuspedVertex>& out) const {
  const long long span = (v.level >= 31) ? (1LL << 31) : (1LL << v.level);
  const Word rep = group_.coset_representative(v.elem, v.peripheral);
  const int budget = R_ - group_.length(rep);
  if (budget < 0) return;
  if (span < budget) {
    for (const Word& p : peripheral_ball_cached(v.peripheral, static_cast<int>(span))) {
      if (p.empty()) continue;
      Word y = group_.multiply(v.elem, p);
      if (group_.length(y) <= R_) out.push_back({std::move(y), v.level, v.peripheral});
    }
    return;
  }
  const bool clique = span >= 2LL * budget;  // every window pair is in reach
  for (const Word& y : coset_window_cached(v.peripheral, rep)) {
    if (y == v.elem) continue;
    if (!clique && group_.distance(v.elem, y) > span) continue;
    out.push_back({y, v.level, v.peripheral});
  }
}

void CuspedGraph::ensure_induced_window() const {
  if (!window_) {
    window_ = std::make_shared<const std::vector<Word>>(group_.ball(Word{}, R_, 400'000));
  }
}

int CuspedGraph::induced_level_distance(int i, const Word& rep, int m, const Word& x, const Word& y) const {
  // BFS in the coset window along induced Cayley edges, hop span 2^m
  ensure_induced_window();
  std::vector<Word> members;
  for (const Word& w : *window_) {
    if (group_.coset_representative(w, i) == rep) members.push_back(w);
  }
  std::unordered_map<Word, int> index;
  for (std::size_t j = 0; j < members.size(); ++j) index[members[j]] = static_cast<int>(j);
  if (!index.count(x) || !index.count(y)) return -1;
  // induced metric: BFS over window members joined by in-window Cayley paths
  const int n = static_cast<int>(members.size());
  std::vector<std::vector<int>> d0(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<int>& row = d0[static_cast<std::size_t>(s)];
    row.assign(static_cast<std::size_t>(n), -1);
    std::queue<Word> q;
    std::unordered_map<Word, int> dist;
    dist[members[static_cast<std::size_t>(s)]] = 0;
    q.push(members[static_cast<std::size_t>(s)]);
    while (!q.empty()) {
      Word u = q.front();
      q.pop();
      const int du = dist[u];
      for (const Word& w : group_.neighbors(u)) {
        if (group_.length(w) > R_ || group_.coset_representative(w, i) != rep) continue;
        if (dist.emplace(w, du + 1).second) q.push(w);
      }
    }
    for (int t = 0; t < n; ++t) {
      auto it = dist.find(members[static_cast<std::size_t>(t)]);
      row[static_cast<std::size_t>(t)] = (it == dist.end()) ? -1 : it->second;
    }
  }
  // hop BFS at level m over the induced metric
  const long long span = 1LL << m;
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(index[x])] = 0;
  q.push(index[x]);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w = 0; w < n; ++w) {
      const int duw = d0[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)];
      if (w == u || duw < 0 || duw > span) continue;
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
    }
  }
  return dist[static_cast<std::size_t>(index[y])];
}

std::vector<CuspedVertex> CuspedGraph::neighbors(const CuspedVertex& v) const {
  std::vector<CuspedVertex> out;
  if (v.level == 0) {
    for (int g = 0; g < group_.generator_count(); ++g) {
      for (int inv = 0; inv < 2; ++inv) {
        Word y = group_.multiply(v.elem, Word(1, letter(g, inv != 0)));
        if (y != v.elem && group_.length(y) <= R_) out.push_back({std::move(y), 0, -1});
      }
    }
    std::sort(out.begin(), out.end(), vertex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (D_ >= 1) {
      for (int i = 0; i < group_.peripheral_count(); ++i) {
        out.push_back({v.elem, 1, static_cast<std::int16_t>(i)});
      }
    }
    return out;
  }
  // vertical
  if (v.level == 1) {
    out.push_back({v.elem, 0, -1});
  } else {
    out.push_back({v.elem, static_cast<std::int16_t>(v.level - 1), v.peripheral});
  }
  if (v.level < D_) out.push_back({v.elem, static_cast<std::int16_t>(v.level + 1), v.peripheral});
  // horizontal
  std::vector<CuspedVertex> horiz;
  if (b2_ == B2Mode::Intrinsic) {
    horizontal_neighbors(v, horiz);
  } else {
    const Word rep = group_.coset_representative(v.elem, v.peripheral);
    ensure_induced_window();
    for (const Word& w : *window_) {
      if (w == v.elem || group_.coset_representative(w, v.peripheral) != rep) continue;
      const int d = induced_level_distance(v.peripheral, rep, 0, v.elem, w);
      if (d > 0 && d <= (1LL << v.level)) horiz.push_back({w, v.level, v.peripheral});
    }
  }
  std::sort(horiz.begin(), horiz.end(), vertex_less);
  horiz.erase(std::unique(horiz.begin(), horiz.end()), horiz.end());
  out.insert(out.end(), horiz.begin(), horiz.end());
  return out;
}

std::vector<CuspedVertex> CuspedGraph::level_neighbors(const CuspedVertex& v) const {
  std::vector<CuspedVertex> out;
  if (v.level == 0) throw std::invalid_argument("level_neighbors needs a horoball vertex");
  horizontal_neighbors(v, out);
  std::sort(out.begin(), out.end(), vertex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> CuspedGraph::intrinsic_level_distance(const CuspedVertex& x, const CuspedVertex& y) const {
  if (x.level != y.level || x.level < 1 || x.peripheral != y.peripheral) {
    throw std::invalid_argument("level distance needs two vertices on one horoball level");
  }
  if (group_.coset_representative(x.elem, x.peripheral) != group_.coset_representative(y.elem, y.peripheral)) {
    return std::nullopt;
  }
  const int dp = group_.distance(x.elem, y.elem);
  if (dp == 0) return 0;
  const long long span = 1LL << x.level;
  return static_cast<int>((dp + span - 1) / span);
}

Word CuspedGraph::coset_rep(const CuspedVertex& v) const {
  if (v.level == 0) throw std::invalid_argument("base vertices belong to every peripheral's coset");
  return group_.coset_representative(v.elem, v.peripheral);
}

std::vector<Word> CuspedGraph::cosets_in_window(int i, std::size_t cap) const {
  std::vector<Word> ball = group_.ball(Word{}, R_, cap);
  std::vector<Word> reps;
  reps.reserve(ball.size());
  for (const Word& w : ball) reps.push_back(group_.coset_representative(w, i));
  std::sort(reps.begin(), reps.end(), shortlex_less);
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

std::vector<CuspedVertex> CuspedGraph::slab_in_window(int i, const Word& rep, int m, std::size_t cap) const {
  std::vector<CuspedVertex> out;
  const int budget = R_ - group_.length(rep);
  if (budget < 0) return out;
  // the coset window is rep * (peripheral ball of the remaining radius)
  for (const Word& q : group_.peripheral_ball(i, budget, cap)) {
    Word w = group_.multiply(rep, q);
    if (m == 0) {
      out.push_back({std::move(w), 0, -1});
    } else {
      out.push_back({std::move(w), static_cast<std::int16_t>(m), static_cast<std::int16_t>(i)});
    }
  }
  std::sort(out.begin(), out.end(), vertex_less);
  return out;
}

std::string CuspedGraph::format(const CuspedVertex& v) const {
  if (v.level == 0) return "B:" + group_.format(v.elem);
  return "H:" + group_.peripheral(v.peripheral).name + "." + group_.format(coset_rep(v)) + ":" +
         std::to_string(v.level) + ":" + group_.format(v.elem);
}

bool CuspedGraph::single_horoball() const {
  if (group_.peripheral_count() != 1) return false;
  return static_cast<int>(group_.peripheral(0).gens.size()) == group_.generator_count();
}

void CuspedGraph::write_edge_list(std::ostream& os, std::size_t max_edges) const {
  // breadth-first sweep of the whole window from the base point
  std::unordered_set<CuspedVertex, CuspedVertexHash> seen;
  std::queue<CuspedVertex> q;
  q.push(star());
  seen.insert(star());
  std::size_t edges = 0;
  while (!q.empty()) {
    CuspedVertex v = q.front();
    q.pop();
    for (const CuspedVertex& w : neighbors(v)) {
      if (vertex_less(v, w)) {
        if (++edges > max_edges) throw SizeLimitError("edge list exceeds cap");
        os << format(v) << ' ' << format(w) << '\n';
      }
      if (seen.insert(w).second) q.push(w);
    }
  }
}

void CuspedGraph::write_dot(std::ostream& os, std::size_t max_edges) const {
  os << "graph cusped {\n";
  std::unordered_set<CuspedVertex, CuspedVertexHash> seen;
  std::queue<CuspedVertex> q;
  q.push(star());
  seen.insert(star());
  std::size_t edges = 0;
  while (!q.empty() && edges <= max_edges) {
    CuspedVertex v = q.front();
    q.pop();
    for (const CuspedVertex& w : neighbors(v)) {
      if (vertex_less(v, w) && edges <= max_edges) {
        os << "  \"" << format(v) << "\" -- \"" << format(w) << "\";\n";
        ++edges;
      }
      if (seen.insert(w).second) q.push(w);
    }
  }
  os << "}\n";
}

ExactHoroballMetric::ExactHoroballMetric(const CuspedGraph& graph) : graph_(&graph) {
  if (!graph.single_horoball()) {
    throw std::invalid_argument("exact metric needs a single horoball over the whole group");
  }
}

int ExactHoroballMetric::distance(const CuspedVertex& x, const CuspedVertex& y) const {
  const MarkedGroup& g = graph_->group();
  const int dp = g.distance(x.elem, y.elem);
  if (dp == 0) return std::abs(x.level - y.level);
  const int lo = std::max(x.level, y.level);
  int hi = lo;
  {
    long long p = 1;
    int k = 0;
    while (p < dp) {
      p <<= 1;
      ++k;
    }
    hi = std::max(lo, k) + 1;
  }
  long long best = std::numeric_limits<long long>::max();
  for (int a = lo; a <= hi; ++a) {
    const long long span = 1LL << a;
    const long long hops = (a == 0) ? dp : (dp + span - 1) / span;
    best = std::min(best, (a - x.level) + (a - y.level) + hops);
  }
  return static_cast<int>(best);
}

int ExactHoroballMetric::level_distance(int m, const CuspedVertex& x, const CuspedVertex& y) const {
  const int dp = graph_->group().distance(x.elem, y.elem);
  if (m == 0) return dp;
  const long long span = 1LL << m;
  return static_cast<int>((dp + span - 1) / span);
}

CuspedGraph make_cusped_fixture(const std::string& name, int base_radius, int depth_cap, B2Mode b2) {
  if (name == "FIX-Z2-SINGLE") {
    MarkedGroup g = MarkedGroup::free_abelian(2);
    g.add_peripheral({0, 1});
    return CuspedGraph(std::move(g), base_radius, depth_cap, b2);
  }
  if (name == "FIX-Z2FREE") {
    MarkedGroup g = MarkedGroup::free_product({MarkedGroup::free_abelian(2), MarkedGroup::free_abelian(2)});
    g.add_peripheral({0, 1});
    g.add_peripheral({2, 3});
    return CuspedGraph(std::move(g), base_radius, depth_cap, b2);
  }
  if (name == "FIX-F2-LINE") {
    MarkedGroup g = MarkedGroup::free_group(2);
    g.add_peripheral({0});
    return CuspedGraph(std::move(g), base_radius, depth_cap, b2);
  }
  if (name == "FIX-FREE2") {
    return CuspedGraph(MarkedGroup::free_group(2), base_radius, depth_cap, b2);
  }
  if (name == "FIX-Z2-FLAT") {
    return CuspedGraph(MarkedGroup::free_abelian(2), base_radius, depth_cap, b2);
  }
  throw std::invalid_argument("unknown cusped fixture: " + name);
}

bool is_horoball_fixture(const std::string& name) {
  return name == "FIX-PATH9" || name == "FIX-GRID7";
}

}  // namespace cusp
