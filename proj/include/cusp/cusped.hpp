#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cusp/group.hpp"
#include "cusp/word.hpp"

namespace cusp {

/// A vertex of the cusped space: either a Cayley-graph vertex (level 0) or a
/// horoball vertex (level >= 1) over a peripheral coset. Level-0 horoball
/// vertices are identified with the Cayley vertices, so a base vertex carries
/// no peripheral tag. The coset a horoball vertex belongs to is determined by
/// its element, so it is not stored.
struct CuspedVertex {
  Word elem;
  std::int16_t level = 0;
  std::int16_t peripheral = -1;  // >= 0 iff level >= 1

  bool is_base() const { return level == 0; }
  friend bool operator==(const CuspedVertex&, const CuspedVertex&) = default;
};

/// Deterministic total order: peripheral, then level, then shortlex on elem.
bool vertex_less(const CuspedVertex& a, const CuspedVertex& b);

struct CuspedVertexHash {
  std::size_t operator()(const CuspedVertex& v) const {
    std::size_t h = std::hash<Word>()(v.elem);
    h ^= static_cast<std::size_t>(v.level) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(v.peripheral + 1) * 0xc2b2ae3d27d4eb4fULL;
    return h;
  }
};

enum class B2Mode { Intrinsic, InducedWindow };

struct WindowError : std::runtime_error {
  explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated cusped space over a marked group: the Cayley ball of radius R
/// at level 0 with a combinatorial horoball glued over every peripheral coset
/// meeting the ball, levels capped at D. Adjacency is implicit: neighbours
/// are generated on demand and nothing above the queried frontier is ever
/// materialised. Horizontal edges at level k use the intrinsic peripheral
/// word metric by default (exact for the catalog groups); a flag switches to
/// the induced metric of the coset window.
class CuspedGraph {
 public:
  CuspedGraph(MarkedGroup group, int base_radius, int depth_cap,
              B2Mode b2 = B2Mode::Intrinsic);

  const MarkedGroup& group() const { return group_; }
  int base_radius() const { return R_; }
  int depth_cap() const { return D_; }
  B2Mode b2_mode() const { return b2_; }

  CuspedVertex star() const { return CuspedVertex{Word{}, 0, -1}; }
  static int depth(const CuspedVertex& v) { return v.level; }

  bool in_window(const CuspedVertex& v) const;

  /// True iff v has a neighbour in the untruncated space that falls outside
  /// this window. For intrinsic horizontal metrics this is exact and O(1):
  /// the farthest horizontal neighbour of (x,k) has length |x| + 2^k.
  bool is_boundary(const CuspedVertex& v) const;

  /// In-window neighbours in deterministic order.
  std::vector<CuspedVertex> neighbors(const CuspedVertex& v) const;

  /// Neighbours at the same level within the horoball slab H(level).
  std::vector<CuspedVertex> level_neighbors(const CuspedVertex& v) const;

  /// Exact same-level (slab) distance for the intrinsic metric:
  /// ceil(d_P(x,y)/2^m) at level m >= 1, the peripheral word metric at 0.
  std::optional<int> intrinsic_level_distance(const CuspedVertex& x, const CuspedVertex& y) const;

  /// Word-metric length of a base element (exact for catalog groups).
  int base_length(const Word& x) const { return group_.length(x); }

  Word coset_rep(const CuspedVertex& v) const;

  /// Cosets of peripheral i meeting the R-ball; enumerates the ball, so only
  /// valid for small windows (cap guarded).
  std::vector<Word> cosets_in_window(int i, std::size_t cap = 2'000'000) const;

  /// Vertices of the level-m slab of the horoball over (i, rep) inside the
  /// window (small windows only; enumeration cap guarded).
  std::vector<CuspedVertex> slab_in_window(int i, const Word& rep, int m,
                                           std::size_t cap = 2'000'000) const;

  std::string format(const CuspedVertex& v) const;

  void write_edge_list(std::ostream& os, std::size_t max_edges = 2'000'000) const;
  void write_dot(std::ostream& os, std::size_t max_edges = 5000) const;

  /// True when this space is a single horoball over the whole group (one
  /// peripheral generated by the full generating set): then exact untruncated
  /// distances are available in closed form, see ExactHoroballMetric.
  bool single_horoball() const;

 private:
  const std::vector<Word>& peripheral_ball_cached(int i, int radius) const;
  const std::vector<Word>& coset_window_cached(int i, const Word& rep) const;
  void horizontal_neighbors(const CuspedVertex& v, std::vector<CuspedVertex>& out) const;
  void ensure_induced_window() const;
  int induced_level_distance(int i, const Word& rep, int m, const Word& x, const Word& y) const;

  MarkedGroup group_;
  int R_ = 0;
  int D_ = 0;
  B2Mode b2_ = B2Mode::Intrinsic;
  std::size_t pball_cap_ = 600'000;
  mutable std::vector<std::map<int, std::shared_ptr<const std::vector<Word>>>> pballs_;
  mutable std::map<std::pair<int, Word>, std::shared_ptr<const std::vector<Word>>> coset_windows_;
  // induced-window mode: materialised base ball (small windows only)
  mutable std::shared_ptr<const std::vector<Word>> window_;
};

/// Exact untruncated distances for single-horoball spaces. Every geodesic
/// between (x,j) and (y,k) has its apex at some level a >= max(j,k) and
/// d = min_a (a-j)+(a-k)+ceil(d_P(x,y)/2^a); the minimum is attained with
/// a <= max(j,k,ceil(log2 d_P)+1).
class ExactHoroballMetric {
 public:
  explicit ExactHoroballMetric(const CuspedGraph& graph);
  int distance(const CuspedVertex& x, const CuspedVertex& y) const;
  int level_distance(int m, const CuspedVertex& x, const CuspedVertex& y) const;

 private:
  const CuspedGraph* graph_;
};

/// Stable fixture identifiers accepted by the CLI and the test suites.
struct FixtureSpec {
  std::string name;
  bool is_cusped = true;  // false: standalone horoball fixture
};

CuspedGraph make_cusped_fixture(const std::string& name, int base_radius, int depth_cap,
                                B2Mode b2 = B2Mode::Intrinsic);
bool is_horoball_fixture(const std::string& name);

}  // namespace cusp
