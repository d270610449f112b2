#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cusp/cusped.hpp"
#include "cusp/distance.hpp"
#include "support/oracles.hpp"

using namespace cusp;

namespace {

CuspedGraph z2_single(int R, int D, B2Mode b2 = B2Mode::Intrinsic) {
  return make_cusped_fixture("FIX-Z2-SINGLE", R, D, b2);
}

}  // namespace

TEST_CASE("construction and the base point") {
  CuspedGraph g = z2_single(3, 3);
  CHECK(g.in_window(g.star()));
  CHECK(g.single_horoball());
  CHECK_THROWS_AS(make_cusped_fixture("FIX-Z2-SINGLE", 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_cusped_fixture("nope", 3, 3), std::invalid_argument);
}

TEST_CASE("neighbors of the base point") {
  CuspedGraph g = z2_single(3, 3);
  const auto nb = g.neighbors(g.star());
  // four Cayley neighbours plus the vertical lift into the single horoball
  CHECK(nb.size() == 5);
  int vertical = 0;
  for (const auto& v : nb) {
    if (v.level == 1) {
      ++vertical;
      CHECK(v.elem == Word{});
      CHECK(v.peripheral == 0);
    }
  }
  CHECK(vertical == 1);
}

TEST_CASE("level-1 horoball vertices attach to their own coset and level 2") {
  CuspedGraph g = make_cusped_fixture("FIX-Z2FREE", 4, 3);
  const MarkedGroup& grp = g.group();
  const CuspedVertex v{grp.parse("c"), 1, 0};  // coset c*P1 of the first factor
  for (const auto& w : g.neighbors(v)) {
    if (w.level == 0) {
      CHECK(w.elem == v.elem);  // only the identified base copy below
    } else {
      CHECK(w.peripheral == 0);
      if (w.level == 1) {
        // horizontal neighbours stay in the same coset
        CHECK(grp.coset_representative(w.elem, 0) == grp.coset_representative(v.elem, 0));
      } else {
        CHECK(w.level == 2);
        CHECK(w.elem == v.elem);
      }
    }
  }
}

TEST_CASE("distinct horoballs never meet above level 0") {
  CuspedGraph g = make_cusped_fixture("FIX-Z2FREE", 4, 3);
  // sweep a small window: adjacency must keep the peripheral tag at level >= 1
  DistanceField f = certified_bfs(g, g.star(), {});
  for (const auto& [v, d] : f.values) {
    if (v.level == 0) continue;
    for (const auto& w : g.neighbors(v)) {
      if (w.level >= 1) CHECK(w.peripheral == v.peripheral);
    }
  }
}

TEST_CASE("boundary predicate agrees with brute-force neighbour inspection") {
  CuspedGraph g = z2_single(6, 3);
  const MarkedGroup& grp = g.group();
  DistanceField f = certified_bfs(g, g.star(), BfsOptions{.horizon = 12, .slack = 0});
  int checked = 0;
  for (const auto& [v, d] : f.values) {
    bool brute = false;
    if (v.level == 0) {
      for (const Word& y : grp.neighbors(v.elem)) {
        if (grp.length(y) > g.base_radius()) brute = true;
      }
    } else {
      if (v.level == g.depth_cap()) brute = true;
      for (const Word& p : grp.peripheral_ball(0, 1 << v.level)) {
        if (grp.length(grp.multiply(v.elem, p)) > g.base_radius()) brute = true;
      }
    }
    CHECK(g.is_boundary(v) == brute);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("certified values equal the exact untruncated metric") {
  CuspedGraph g = z2_single(12, 5);
  ExactHoroballMetric exact(g);
  DistanceField f = certified_bfs(g, g.star(), {});
  CHECK(f.certified(g.star()));
  CHECK(*f.certified_value(g.star()) == 0);
  int certified = 0;
  for (const auto& [v, d] : f.values) {
    const auto cv = f.certified_value(v);
    if (!cv) {
      // uncertified explored vertices still obey the lower-bound rule
      CHECK(exact.distance(g.star(), v) >= f.lower_bound(v));
      continue;
    }
    ++certified;
    CHECK(*cv == exact.distance(g.star(), v));
  }
  CHECK(certified > 50);
  // from a second source too
  const CuspedVertex src{g.group().parse("ab"), 2, 0};
  DistanceField f2 = certified_bfs(g, src, {});
  for (const auto& [v, d] : f2.values) {
    if (auto cv = f2.certified_value(v)) CHECK(*cv == exact.distance(src, v));
  }
}

TEST_CASE("growing the window never flips a certified value") {
  CuspedGraph small = z2_single(8, 4);
  CuspedGraph big = z2_single(10, 6);
  DistanceField fs = certified_bfs(small, small.star(), {});
  DistanceField fb = certified_bfs(big, big.star(), {});
  int compared = 0;
  for (const auto& [v, d] : fs.values) {
    if (!fs.certified(v)) continue;
    CHECK(fb.certified(v));
    CHECK(*fb.certified_value(v) == d);
    ++compared;
  }
  CHECK(compared > 30);
}

TEST_CASE("horizon-limited fields stay sound") {
  CuspedGraph g = z2_single(10, 5);
  DistanceField f = certified_bfs(g, g.star(), BfsOptions{.horizon = 3, .slack = 0});
  CHECK(f.horizon_completed == 3);
  CHECK(f.cert_limit() <= 3);
  ExactHoroballMetric exact(g);
  for (const auto& [v, d] : f.values) {
    if (f.certified(v)) CHECK(exact.distance(g.star(), v) == d);
  }
}

TEST_CASE("vertex cap raises an explicit error") {
  CuspedGraph g = z2_single(10, 5);
  BfsOptions opts;
  opts.max_vertices = 10;
  CHECK_THROWS_AS(certified_bfs(g, g.star(), opts), SizeLimitError);
}

TEST_CASE("closest slab vertex") {
  CuspedGraph g = z2_single(8, 4);
  DistanceField f = certified_bfs(g, g.star(), {});
  const CuspedVertex z = closest_level_vertex(g, f, 0, Word{}, 3);
  CHECK(z.elem == Word{});
  CHECK(z.level == 3);
  CHECK(*f.certified_value(z) == 3);

  CuspedGraph h = make_cusped_fixture("FIX-Z2FREE", 6, 4);
  DistanceField fh = certified_bfs(h, h.star(), {});
  const Word rep = h.group().parse("c");
  const CuspedVertex zc = closest_level_vertex(h, fh, 0, rep, 1);
  CHECK(h.group().format(zc.elem) == "c");
  CHECK(*fh.certified_value(zc) == 2);
}

TEST_CASE("restricted fields agree with a materialized-region oracle") {
  CuspedGraph g = z2_single(7, 4);
  const int m = 2;
  auto region = [m](const CuspedVertex& v) { return v.level >= m; };
  const CuspedVertex src{g.group().parse("a"), 2, 0};
  BfsOptions opts;
  opts.contains = region;
  DistanceField f = certified_bfs(g, src, opts);
  oracle::ExplicitRegion mat = oracle::materialize_region(g, src, region, 1'000'000);
  for (const auto& [v, d] : f.values) {
    if (d > f.horizon_completed) continue;
    const auto od = oracle::region_bfs_distance(mat, src, v);
    REQUIRE(od.has_value());
    CHECK(*od == d);
  }
}

TEST_CASE("coset count in a small window by independent partition") {
  CuspedGraph g = make_cusped_fixture("FIX-Z2FREE", 2, 2);
  const MarkedGroup& grp = g.group();
  const auto reps = g.cosets_in_window(0);
  // independent count: partition the ball by the same-coset relation
  const auto ball = grp.ball(Word{}, 2);
  std::vector<Word> leaders;
  for (const Word& x : ball) {
    bool fresh = true;
    for (const Word& l : leaders) {
      if (grp.in_peripheral(grp.multiply(grp.inverse(l), x), 0)) {
        fresh = false;
        break;
      }
    }
    if (fresh) leaders.push_back(x);
  }
  CHECK(reps.size() == leaders.size());
}

TEST_CASE("slab enumeration matches the coset window") {
  CuspedGraph g = make_cusped_fixture("FIX-Z2FREE", 4, 3);
  const MarkedGroup& grp = g.group();
  const Word rep = grp.parse("c");
  const auto slab = g.slab_in_window(0, rep, 2);
  for (const auto& v : slab) {
    CHECK(v.level == 2);
    CHECK(grp.coset_representative(v.elem, 0) == rep);
    CHECK(grp.length(v.elem) <= 4);
  }
  // budget formula: |rep * q| = |rep| + |q|
  CHECK(slab.size() == grp.peripheral_ball(0, 3).size());
}

TEST_CASE("intrinsic level distance formula") {
  CuspedGraph g = z2_single(10, 5);
  const MarkedGroup& grp = g.group();
  const CuspedVertex a{grp.parse("aaaa"), 2, 0};
  const CuspedVertex b{grp.parse("BB"), 2, 0};
  // peripheral distance 6, level 2 spans 4: two hops
  CHECK(*g.intrinsic_level_distance(a, b) == 2);
  const CuspedVertex c{grp.parse("a"), 1, 0};
  const CuspedVertex d{grp.parse("ab"), 1, 0};
  CHECK(*g.intrinsic_level_distance(c, d) == 1);
}

TEST_CASE("induced window metric only removes edges") {
  CuspedGraph intrinsic = z2_single(4, 2, B2Mode::Intrinsic);
  CuspedGraph induced = z2_single(4, 2, B2Mode::InducedWindow);
  DistanceField f = certified_bfs(intrinsic, intrinsic.star(), {});
  for (const auto& [v, d] : f.values) {
    if (v.level == 0) continue;
    const auto ni = induced.neighbors(v);
    const auto nf = intrinsic.neighbors(v);
    for (const auto& w : ni) {
      CHECK(std::find(nf.begin(), nf.end(), w) != nf.end());
    }
    CHECK(ni.size() <= nf.size());
  }
}

TEST_CASE("coset representatives do not depend on the member chosen") {
  CuspedGraph g = make_cusped_fixture("FIX-Z2FREE", 4, 2);
  const MarkedGroup& grp = g.group();
  Rng rng(17);
  const auto ball = grp.ball(Word{}, 3);
  for (const Word& x : ball) {
    for (int i = 0; i < grp.peripheral_count(); ++i) {
      Word p = grp.random_peripheral_element(i, 2, rng);
      CHECK(grp.coset_representative(grp.multiply(x, p), i) == grp.coset_representative(x, i));
    }
  }
}

TEST_CASE("edge list export carries the vertex tags") {
  CuspedGraph g = z2_single(2, 1);
  std::ostringstream os;
  g.write_edge_list(os);
  const std::string text = os.str();
  CHECK(text.find("B:1 ") != std::string::npos);
  CHECK(text.find("H:P1.1:1:1") != std::string::npos);
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines > 10);
}

TEST_CASE("exact metric needs a single horoball over the whole group") {
  CuspedGraph flat = make_cusped_fixture("FIX-Z2-FLAT", 3, 2);
  CHECK(!flat.single_horoball());
  CHECK_THROWS_AS(ExactHoroballMetric{flat}, std::invalid_argument);
}
