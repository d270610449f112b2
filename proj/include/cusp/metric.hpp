#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cusp/distance.hpp"
#include "cusp/horoball.hpp"
#include "cusp/report.hpp"
#include "cusp/rng.hpp"

namespace cusp {

// Path-companion constants: C is the thin-triangle constant 3*delta the
// closeness condition is calibrated with, M the closeness bound, K = 2M the
// depth band the hat variant of the connecting-path condition is confined to.
constexpr long long closeness_C(long long delta) { return 3 * delta; }
constexpr long long closeness_M(long long delta) { return 6 * (closeness_C(delta) + 45 * delta) + 2 * delta + 3; }
constexpr long long depth_band_K(long long delta) { return 2 * closeness_M(delta); }

/// Everything the lemma runners need about one fixture instance.
struct Scene {
  std::string fixture;
  std::shared_ptr<CuspedGraph> graph;
  std::shared_ptr<FieldProvider> fields;
  std::shared_ptr<ExactProvider> exact;  // null unless single-horoball space
  bool prefer_exact = false;
  std::shared_ptr<DistanceField> master;  // field from the base point, with parents
  int delta = 1;
  DeltaEstimateReport delta_report;

  DistanceProvider& provider(std::optional<bool> exact_override = std::nullopt) const {
    const bool want = exact_override.value_or(prefer_exact);
    if (want && exact) return *exact;
    return *fields;
  }
  std::optional<int> dist_from_star(const CuspedVertex& v, std::optional<bool> exact_override = std::nullopt) const {
    if (exact_override.value_or(prefer_exact) && exact) return exact->distance(graph->star(), v);
    return master->certified_value(v);
  }
  int lb_from_star(const CuspedVertex& v, std::optional<bool> exact_override = std::nullopt) const {
    if (exact_override.value_or(prefer_exact) && exact) return exact->lower_bound(graph->star(), v);
    return master->lower_bound(v);
  }
  /// Horoballs with at least one certified vertex at the given level.
  std::vector<std::pair<int, Word>> visible_horoballs(int level) const;
};

Scene make_scene(const std::string& fixture, std::shared_ptr<CuspedGraph> graph, const BfsOptions& master_opts,
                 bool prefer_exact);

// ---- hyperbolicity estimation -----------------------------------------

struct DeltaPolicy {
  std::optional<int> fixed;  // skip estimation entirely
  int exhaustive_limit = 120;
  long long sample_quadruples = 200'000;
  int max_sources = 160;  // pool cap for pairwise field extraction
  int max_level = -1;     // restrict pool depth; -1: no restriction
  // restrict the pool to vertices this close to the base point so that the
  // quadruples' pairwise distances stay inside each other's certificates;
  // -1 picks cert_limit/3 (at least 2)
  int max_value = -1;
  std::uint64_t seed = 1;
};

/// Four-point hyperbolicity defect over certified quadruples, doubled-integer
/// arithmetic throughout: for each quadruple the three pairings' distance
/// sums L >= Mid >= S give a defect L - Mid, and delta_hat = ceil(max/2).
DeltaEstimateReport estimate_delta(Scene& scene, const DeltaPolicy& policy);

// ---- standard geodesics (approach, ascent, <=3 horizontal, descent) ----

inline int segment_length(const std::vector<CuspedVertex>& p) {
  return p.empty() ? 0 : static_cast<int>(p.size()) - 1;
}

struct StandardGeodesic {
  std::vector<CuspedVertex> approach;    // from the base point to the entry vertex
  std::vector<CuspedVertex> ascent;      // vertical up from the entry
  std::vector<CuspedVertex> horizontal;  // at the apex, at most 3 edges
  std::vector<CuspedVertex> descent;     // vertical down to the target
  CuspedVertex entry;
  int apex = 0;
  int total_length = 0;
};

struct StandardGeodesicOutcome {
  std::optional<StandardGeodesic> geodesic;
  bool depth_capped = false;  // only realisable with an apex above the cap
};

/// Builds a geodesic from the base point to a horoball target of the form
/// (approach, vertical ascent, horizontal of length <= 3, vertical descent)
/// whose length equals the certified distance. Search is exhaustive over
/// certified entry candidates at the target's level.
StandardGeodesicOutcome build_standard_geodesic(Scene& scene, const CuspedVertex& target,
                                                std::optional<bool> exact_override = std::nullopt);

struct SweepParams {
  int level = -1;  // -1: use scene.delta
  long long max_targets = 100'000;
  long long max_pairs = 500'000;
  std::optional<bool> exact_override;
};

/// Standard geodesics exist for every certified target at the sweep level and
/// entry vertices of targets in one horoball are within 2*delta + 1.
LemmaReport verify_standard_geodesics(Scene& scene, const SweepParams& params);

/// d(*,t) <= d(*,z) + d(z,t) <= 2*delta + 1 + d(*,t) for the slab vertex z
/// closest to the base point.
LemmaReport verify_base_approx(Scene& scene, const SweepParams& params);

/// Distances inside a deep horoball part agree with distances in the whole
/// space (convexity of m-horoballs), checked per certified pair both ways.
LemmaReport verify_convexity(Scene& scene, int m, const SweepParams& params);

// ---- level-ball vs space-ball inclusions -------------------------------

struct SubBallParams {
  int m = 1;
  int n_max = 6;
  long long max_pairs = 2'000'000;
  std::optional<bool> exact_override;
};

/// d^m(z,t) <= 2^n implies d(z,t) <= 2n (n >= 1), plus the setwise inclusion.
LemmaReport verify_level_ball_in_ball(Scene& scene, const SubBallParams& params);
LemmaReport verify_level_ball_in_ball(const HoroballGraph& h, const std::string& instance,
                                      const SubBallParams& params);

/// d(z,t) <= 2n+3 implies d^m <= 3*2^n, d(z,t) <= 2n+2 implies d^m <= 2^(n+1),
/// and B_k(z) n H(m) inside the level ball of radius 2^(floor(k/2)+1).
LemmaReport verify_ball_in_level_ball(Scene& scene, const SubBallParams& params);
LemmaReport verify_ball_in_level_ball(const HoroballGraph& h, const std::string& instance,
                                      const SubBallParams& params);

// ---- horoball geodesic normal form (standalone fixtures) ----------------

struct GeodesicFormParams {
  long long max_pairs = 2'000'000;
  int hausdorff_max_distance = 10;
  int hausdorff_bound = 4;
  std::size_t max_geodesics_per_pair = 200'000;
  // literal: enumerate every geodesic and measure it. Otherwise use the
  // equivalent geodesic-DAG test: every DAG vertex lies near the constructed
  // path, and no DAG path dodges the neighbourhood of a constructed vertex
  // (a dodging path is produced as the counterexample when one exists).
  bool literal_enumeration = true;
};

/// Constructor length equals BFS distance for every certified pair, and all
/// exhaustively enumerated geodesics stay within Hausdorff distance 4 of the
/// constructed one for pairs at distance <= 10.
LemmaReport verify_geodesic_form(const HoroballGraph& h, const std::string& instance,
                                 const GeodesicFormParams& params);

/// All geodesics between two vertices of the truncated horoball (complete for
/// certified pairs: geodesic apexes stay below the cap).
std::vector<std::vector<HoroVertex>> enumerate_geodesics(const HoroballGraph& h, const HoroVertex& x,
                                                         const HoroVertex& y, std::size_t cap);

int hausdorff_distance(const HoroballGraph& h, const std::vector<HoroVertex>& a,
                       const std::vector<HoroVertex>& b);

}  // namespace cusp
