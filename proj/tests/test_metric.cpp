#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "cusp/metric.hpp"
#include "cusp/suite.hpp"
#include "support/oracles.hpp"

using namespace cusp;

namespace {

Scene scene_for(const std::string& fixture, int R, int D, bool prefer_exact, int horizon = -1) {
  RunConfig cfg;
  cfg.fixture = fixture;
  cfg.radius = R;
  cfg.depth = D;
  cfg.master_horizon = horizon;
  cfg.exact = prefer_exact ? "on" : "off";
  return build_scene(cfg);
}

}  // namespace

TEST_CASE("closeness constants table") {
  CHECK(closeness_M(1) == 293);
  CHECK(depth_band_K(1) == 586);
  for (long long delta = 1; delta <= 20; ++delta) {
    CHECK(closeness_M(delta) == 290 * delta + 3);
    CHECK(depth_band_K(delta) == 580 * delta + 6);
  }
}

TEST_CASE("four-point defect: trees are 0-hyperbolic") {
  Scene s = scene_for("FIX-FREE2", 6, 1, false);
  DeltaPolicy policy;
  policy.seed = 1;
  const DeltaEstimateReport rep = estimate_delta(s, policy);
  CHECK(rep.delta_hat == 0);
  CHECK(rep.doubled_defect_max == 0);
  CHECK(rep.quadruples_checked > 0);
}

TEST_CASE("four-point defect: the flat plane is not thin") {
  Scene s = scene_for("FIX-Z2-FLAT", 6, 1, false);
  // exhibit the square quadruple from the derivation: corners of a 6-box
  const MarkedGroup& g = s.graph->group();
  const CuspedVertex w{g.parse(""), 0, -1};
  const CuspedVertex x{g.parse("aaaaaa"), 0, -1};
  const CuspedVertex y{g.parse("bbbbbb"), 0, -1};
  const CuspedVertex z{g.parse("aaaaaabbbbbb"), 0, -1};
  auto d = [&](const CuspedVertex& u, const CuspedVertex& v) { return g.distance(u.elem, v.elem); };
  const long long s1 = d(w, z) + d(x, y);
  const long long s2 = d(w, x) + d(y, z);
  const long long s3 = d(w, y) + d(x, z);
  const long long hi = std::max({s1, s2, s3});
  const long long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
  CHECK((hi - mid + 1) / 2 >= 2);

  DeltaPolicy policy;
  policy.seed = 1;
  policy.max_sources = 140;
  const DeltaEstimateReport rep = estimate_delta(s, policy);
  CHECK(rep.delta_hat >= 2);
}

TEST_CASE("defect is invariant under relabeling the quadruple") {
  // the three-pairing form used by the estimator equals the based
  // Gromov-product form for every labeling
  Scene s = scene_for("FIX-Z2-SINGLE", 8, 4, true);
  const MarkedGroup& g = s.graph->group();
  ExactHoroballMetric exact(*s.graph);
  Rng rng(23);
  std::vector<CuspedVertex> pts;
  for (const auto& [v, dd] : s.master->values) pts.push_back(v);
  std::sort(pts.begin(), pts.end(), vertex_less);
  REQUIRE(pts.size() >= 4);
  for (int trial = 0; trial < 200; ++trial) {
    CuspedVertex q[4];
    std::set<std::size_t> used;
    for (auto& slot : q) {
      std::size_t idx = static_cast<std::size_t>(rng.below(pts.size()));
      while (used.count(idx)) idx = static_cast<std::size_t>(rng.below(pts.size()));
      used.insert(idx);
      slot = pts[idx];
    }
    auto d = [&](int i, int j) { return static_cast<long long>(exact.distance(q[i], q[j])); };
    // based form at w = q[0]: defect2 = min(2(x.z)_w, 2(z.y)_w) - 2(x.y)_w
    auto gromov2 = [&](int a, int b) { return d(0, a) + d(0, b) - d(a, b); };
    const long long based =
        std::max(0LL, std::min(gromov2(1, 3), gromov2(3, 2)) - gromov2(1, 2));
    const long long s1 = d(0, 1) + d(2, 3);
    const long long s2 = d(0, 2) + d(1, 3);
    const long long s3 = d(0, 3) + d(1, 2);
    const long long hi = std::max({s1, s2, s3});
    const long long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    // the pairing defect dominates every based labeling
    CHECK(based <= hi - mid);
  }
  (void)g;
}

TEST_CASE("delta estimate is deterministic and monotone in the window") {
  RunConfig small;
  small.fixture = "FIX-Z2-SINGLE";
  small.radius = 6;
  small.depth = 3;
  Scene s1 = build_scene(small);
  Scene s1b = build_scene(small);
  CHECK(s1.delta_report.delta_hat == s1b.delta_report.delta_hat);
  CHECK(s1.delta_report.doubled_defect_max == s1b.delta_report.doubled_defect_max);

  RunConfig big = small;
  big.radius = 9;
  big.depth = 4;
  Scene s2 = build_scene(big);
  CHECK(s2.delta_report.doubled_defect_max >= s1.delta_report.doubled_defect_max);
}

TEST_CASE("standard geodesics on the single-horoball fixture") {
  Scene s = scene_for("FIX-Z2-SINGLE", 10, 5, false);
  // the target right above the base point: pure vertical
  const CuspedVertex above{Word{}, 3, 0};
  auto got = build_standard_geodesic(s, above);
  REQUIRE(got.geodesic.has_value());
  CHECK(got.geodesic->total_length == 3);
  CHECK(segment_length(got.geodesic->horizontal) == 0);
  // a deeper off-column target
  const CuspedVertex t{s.graph->group().parse("aaab"), 2, 0};
  const auto dt = s.master->certified_value(t);
  REQUIRE(dt.has_value());
  auto got2 = build_standard_geodesic(s, t);
  REQUIRE(got2.geodesic.has_value());
  CHECK(got2.geodesic->total_length == *dt);
  CHECK(segment_length(got2.geodesic->horizontal) <= 3);
}

TEST_CASE("standard geodesic sweep and base approximation pass") {
  Scene s = scene_for("FIX-Z2-SINGLE", 10, 5, false);
  s.delta = 2;
  SweepParams params;
  params.level = 2;
  LemmaReport tight = verify_standard_geodesics(s, params);
  CHECK(tight.passed());
  CHECK(tight.checked > 10);
  LemmaReport base = verify_base_approx(s, params);
  CHECK(base.passed());
  CHECK(base.checked > 5);
}

TEST_CASE("convexity of deep horoball parts") {
  Scene s = scene_for("FIX-Z2-SINGLE", 8, 4, false);
  s.delta = 2;
  SweepParams params;
  params.max_targets = 60;
  params.max_pairs = 4000;
  LemmaReport rep = verify_convexity(s, 2, params);
  CHECK(rep.passed());
  CHECK(rep.checked > 20);
}

TEST_CASE("level ball inclusions on the cusped fixture") {
  Scene s = scene_for("FIX-Z2-SINGLE", 8, 4, true);
  s.delta = 2;
  SubBallParams p;
  p.m = 2;
  LemmaReport r1 = verify_level_ball_in_ball(s, p);
  CHECK(r1.passed());
  CHECK(r1.checked > 50);
  LemmaReport r2 = verify_ball_in_level_ball(s, p);
  CHECK(r2.passed());
  CHECK(r2.checked > 50);
}

TEST_CASE("level ball inclusions on the standalone path horoball") {
  HoroballGraph h(std::make_shared<LevelGraph>(LevelGraph::path(9)), 6);
  SubBallParams p;
  p.m = 1;
  LemmaReport r1 = verify_level_ball_in_ball(h, "path9", p);
  CHECK(r1.passed());
  CHECK(r1.checked > 0);
  LemmaReport r2 = verify_ball_in_level_ball(h, "path9", p);
  CHECK(r2.passed());
  CHECK(r2.checked > 0);
}

TEST_CASE("geodesic form report on the path fixture") {
  HoroballGraph h(std::make_shared<LevelGraph>(LevelGraph::path(9)), 8);
  GeodesicFormParams p;
  LemmaReport rep = verify_geodesic_form(h, "path9 D=8", p);
  CHECK(rep.passed());
  CHECK(rep.checked == 81 * 80 / 2);  // every pair is certified at D=8
  CHECK(rep.skipped_uncertified == 0);
}
