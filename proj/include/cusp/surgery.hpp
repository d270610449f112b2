#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cusp/metric.hpp"

namespace cusp {

/// An edge path in the cusped space; consecutive vertices must be adjacent.
/// Edges are vertical (level difference 1) or horizontal (same level).
struct EdgePath {
  std::vector<CuspedVertex> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  int max_level() const;
  int min_level() const;
  const CuspedVertex& front() const { return vertices.front(); }
  const CuspedVertex& back() const { return vertices.back(); }
};

/// Validates consecutive adjacency (used by tests and the decomposition).
bool is_edge_path(const CuspedGraph& graph, const EdgePath& path);

/// An excursion above a horoball level: starts and ends at level dbar of one
/// horoball, interior strictly above.
struct Excursion {
  EdgePath path;
  int peripheral = 0;
  Word rep;
  int dbar = 0;
};

/// Per-horoball anchoring data for the excursion lemmas.
struct HoroballContext {
  int peripheral = 0;
  Word rep;
  int dbar = 0;
  CuspedVertex z;  // slab vertex closest to the base point
  int dz = 0;      // certified d(*, z)
  std::shared_ptr<DistanceField> z_field;  // null when the exact metric is in use
};

/// Resolves z and its certified distance; throws InconclusiveError when the
/// window shows no certified slab vertex.
HoroballContext make_horoball_context(Scene& scene, int peripheral, const Word& rep, int dbar,
                                      std::optional<bool> exact_override = std::nullopt);

// ---- projection ---------------------------------------------------------

/// Level-k shadow of a horoball path: endpoints drop vertically, every
/// horizontal edge's endpoints drop to level k and consecutive drop points
/// are joined by shortest level-k segments (peripheral geodesic split into
/// hops of span 2^k).
EdgePath project_to_level(const CuspedGraph& graph, const EdgePath& psi, int k);

/// Witness check: every projection vertex's vertical line passes within one
/// horizontal unit of a vertex on some horizontal edge of psi. Returns the
/// number of projection vertices with no witness.
int projection_witness_failures(const CuspedGraph& graph, const EdgePath& psi, const EdgePath& gamma);

// ---- escape rays ----------------------------------------------------------

struct EscapeRay {
  std::vector<Word> points;  // ray vertices starting at x
  int direction = 0;         // +1 or -1 along the axis template
};

/// A geodesic ray at x avoiding the ball B_r around the identity, built by
/// translating the catalog axis through x and picking a direction. Requires
/// |x| >= 2r + 1; throws InconclusiveError when neither direction works
/// (which would falsify the no-dead-end property on the instance).
EscapeRay escape_ray(const MarkedGroup& group, const Word& x, int r, int budget);

// ---- annulus connection ----------------------------------------------------

struct AnnulusResult {
  std::optional<EdgePath> path;
  bool window_limited = false;
  bool disconnected = false;  // annulus genuinely separates inside the window
};

/// Path between two slab vertices avoiding the level-metric ball of the given
/// radius around z, found by restricted BFS inside the slab.
AnnulusResult annulus_connect(const CuspedGraph& graph, const CuspedVertex& x, const CuspedVertex& y,
                              const CuspedVertex& z, long long avoid_level_radius,
                              std::size_t max_vertices = 2'000'000);

// ---- excursion replacements -----------------------------------------------

enum class ExcursionRoute { Far, Near, Boundary, Undecidable };

/// Routes an excursion by the position of its vertices relative to z:
/// all certified distances > L+2 -> Far; some certified distance <= L+1 ->
/// Near; the L+2 edge case -> Boundary; anything else -> Undecidable.
ExcursionRoute route_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc,
                               std::optional<bool> exact_override = std::nullopt);

struct FarCheckResult {
  bool hypothesis_ok = false;
  long long checked = 0, skipped = 0, violations = 0;
  EdgePath projection;
};

/// Far-from-z excursions: the projection stays > L+2 from z and avoids the
/// ball of radius r - (2 delta + 1) around the base point.
FarCheckResult check_far_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc, int r,
                                   LemmaReport& rep, std::optional<bool> exact_override = std::nullopt);

struct NearReplaceResult {
  std::optional<EdgePath> replacement;
  int k = 0;
  int observed_length = -1;
  bool window_limited = false;
  long long checked = 0, skipped = 0, violations = 0;
};

/// Near-z excursions: replacement path in the slab avoiding the level ball
/// around z and the ball of radius r - (2 delta + 5) around the base point.
NearReplaceResult replace_near_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc,
                                         int r, LemmaReport& rep,
                                         std::optional<bool> exact_override = std::nullopt);

struct DeepCheckResult {
  bool hypothesis_ok = false;
  long long checked = 0, skipped = 0, violations = 0;
};

/// Depth-bounded variant: with L the maximum depth of the excursion, vertices
/// further than L - dbar/2 + 2 from z (doubled-integer comparison) project to
/// vertices with the same clearance, avoiding the r - (2 delta + 1) ball.
DeepCheckResult check_deep_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc, int r,
                                     LemmaReport& rep, std::optional<bool> exact_override = std::nullopt);

// ---- depth compression ------------------------------------------------------

struct CompressResult {
  std::optional<EdgePath> compressed;
  long long excursions_replaced = 0;
  bool inconclusive = false;
  std::string offending;  // formatted first inconclusive excursion
};

/// Splits a path at its level-dbar crossings into maximal excursions and
/// replaces each by a projection or a near-z replacement; the output lies at
/// depth <= dbar, shares endpoints, and avoids the r - (2 delta + 5) ball.
CompressResult compress_to_depth(Scene& scene, const EdgePath& psi, int dbar, int r,
                                 LemmaReport& rep, std::optional<bool> exact_override = std::nullopt);

// ---- closeness and connecting-path conditions -------------------------------

struct StarWitness {
  CuspedVertex x, y;
  int epsilon = 0;
  long long m_bound = 0;  // closeness_M(delta)
  bool holds = false;
  int gap = 0;       // |d(*,x) - d(*,y)|
  int distance = 0;  // d(x,y)
};

/// Both clauses evaluated from certified distances; nullopt when either
/// distance is uncertified.
std::optional<StarWitness> check_closeness(Scene& scene, const CuspedVertex& x, const CuspedVertex& y,
                                           int epsilon, std::optional<bool> exact_override = std::nullopt);

enum class DaggerVariant { Plain, Hat };

struct DaggerWitness {
  CuspedVertex x, y;
  DaggerVariant variant = DaggerVariant::Plain;
  int m = 0;                  // min(d(*,x), d(*,y))
  long long forbidden = -1;   // avoidance radius (negative: no restriction)
  std::optional<int> n;       // minimal in-window path length, if <= n_max
  bool exact = false;         // n certified equal to the full-space minimum
  bool window_limited = false;
  std::optional<EdgePath> path;
};

/// Bounded search for a connecting path avoiding B_{m - 48 delta} (plain) or
/// confined to depth <= K(delta) and avoiding B_{m - 50 delta - 5} (hat).
DaggerWitness search_connecting_path(Scene& scene, const CuspedVertex& x, const CuspedVertex& y, int delta,
                                     int n_max, DaggerVariant variant,
                                     std::optional<bool> exact_override = std::nullopt);

// ---- samplers ----------------------------------------------------------------

struct ExcursionParams {
  int dbar = 1;
  int steps = 6;           // interior moves before descending
  int offset_lo = 1;       // |start offset from z| in the peripheral metric
  int offset_hi = 8;
  int level_cap = -1;      // -1: depth cap
  int horizontal_tries = 8;
};

/// Seeded lazy random walk in the part of a horoball above a level, started
/// at a random offset from z and conditioned to return to the level.
std::optional<Excursion> sample_excursion(Scene& scene, const HoroballContext& ctx,
                                          const ExcursionParams& params, Rng& rng);

// ---- sweep runners -------------------------------------------------------------

struct SurgerySweepParams {
  int dbar = -1;  // -1: scene.delta
  long long samples = 1000;
  ExcursionParams excursion;
  std::vector<int> k_values = {-1, 0, 1, 2, 3};
  int max_horoballs = 4;
  std::uint64_t seed = 1;
  std::optional<bool> exact_override;
};

LemmaReport run_projection_sweep(Scene& scene, const SurgerySweepParams& params);
LemmaReport run_far_excursion_sweep(Scene& scene, const SurgerySweepParams& params);
LemmaReport run_near_excursion_sweep(Scene& scene, const SurgerySweepParams& params);
LemmaReport run_deep_excursion_sweep(Scene& scene, const SurgerySweepParams& params);
LemmaReport run_compress_sweep(Scene& scene, const SurgerySweepParams& params);
LemmaReport run_escape_sweep(Scene& scene, const SurgerySweepParams& params);

struct DaggerSweepParams {
  long long samples = 200;
  int n_max = 64;
  int delta = 0;  // small delta makes the forbidden ball bite in small windows
  std::uint64_t seed = 1;
  std::optional<bool> exact_override;
};

LemmaReport run_dagger_sweep(Scene& scene, const DaggerSweepParams& params);

}  // namespace cusp
