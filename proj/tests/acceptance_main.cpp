// Acceptance suite: one line per criterion, exit nonzero on any failure.
// Every tolerance is pinned here; inconclusive instances never count as
// passes, and nothing is loosened to force a green line.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <tuple>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cusp/suite.hpp"
#include "support/oracles.hpp"

using namespace cusp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string label;
  Outcome (*run)();
};

std::string fmt_count(const char* what, long long n) {
  std::ostringstream os;
  os << what << "=" << n;
  return os.str();
}

// ---- C1: horoball edge rules vs explicit oracle ---------------------------

std::set<std::pair<int, int>> implementation_edges(const HoroballGraph& h) {
  std::set<std::pair<int, int>> edges;
  const int n = h.level_graph().vertex_count();
  for (int k = 0; k <= h.depth_cap(); ++k) {
    for (int v = 0; v < n; ++v) {
      for (const HoroVertex& w : h.neighbors({v, k})) {
        const int a = v * (h.depth_cap() + 1) + k;
        const int b = w.base * (h.depth_cap() + 1) + w.level;
        edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }
  return edges;
}

Outcome run_edge_rules() {
  std::vector<LevelGraph> graphs;
  for (int n = 2; n <= 10; ++n) graphs.push_back(LevelGraph::path(n));
  for (int n = 3; n <= 12; ++n) graphs.push_back(LevelGraph::cycle(n));
  graphs.push_back(LevelGraph::grid(3, 3));
  graphs.push_back(LevelGraph::grid(4, 5));
  graphs.push_back(LevelGraph::grid(5, 5));
  graphs.push_back(LevelGraph::grid(7, 7));
  graphs.push_back(LevelGraph::complete(6));
  graphs.push_back(LevelGraph::star(8));
  long long instances = 0, mismatches = 0;
  for (const LevelGraph& g : graphs) {
    auto shared = std::make_shared<LevelGraph>(g);
    for (int depth : {3, 6}) {
      HoroballGraph h(shared, depth);
      oracle::ExplicitHoroball e = oracle::materialize_horoball(g, depth);
      std::set<std::pair<int, int>> oracle_edges;
      for (int a = 0; a < e.vertex_count(); ++a) {
        for (int b : e.adj[static_cast<std::size_t>(a)]) {
          oracle_edges.emplace(std::min(a, b), std::max(a, b));
        }
      }
      if (implementation_edges(h) != oracle_edges) ++mismatches;
      ++instances;
    }
  }
  Outcome out;
  out.pass = instances >= 20 && mismatches == 0;
  out.detail = fmt_count("level-graphs", instances) + " " + fmt_count("mismatches", mismatches);
  return out;
}

// ---- C2: geodesic normal form + Hausdorff bound ---------------------------

Outcome run_geodesic_form() {
  Outcome out;
  GeodesicFormParams literal;
  literal.literal_enumeration = true;
  HoroballGraph path(std::make_shared<LevelGraph>(LevelGraph::path(9)), 8);
  LemmaReport a = verify_geodesic_form(path, "FIX-PATH9 D=8", literal);

  GeodesicFormParams dagform;
  dagform.literal_enumeration = false;
  HoroballGraph grid(std::make_shared<LevelGraph>(LevelGraph::grid(7, 7)), 6);
  LemmaReport b = verify_geodesic_form(grid, "FIX-GRID7 D=6", dagform);

  const long long path_pairs = 81LL * 80 / 2;
  const long long grid_pairs = 343LL * 342 / 2;
  out.pass = a.passed() && b.passed() && a.checked == path_pairs && b.checked == grid_pairs &&
             a.skipped_uncertified == 0 && b.skipped_uncertified == 0;
  out.detail = "path " + fmt_count("pairs", a.checked) + " viol=" + std::to_string(a.violations.size()) +
               "; grid " + fmt_count("pairs", b.checked) + " viol=" + std::to_string(b.violations.size());
  return out;
}

// ---- C3: level-ball inclusions --------------------------------------------

Outcome run_subball() {
  Outcome out;
  long long checked = 0, violations = 0, skipped = 0;
  HoroballGraph path(std::make_shared<LevelGraph>(LevelGraph::path(9)), 6);
  for (int m = 1; m <= 6; ++m) {
    SubBallParams p;
    p.m = m;
    LemmaReport r1 = verify_level_ball_in_ball(path, "FIX-PATH9", p);
    LemmaReport r2 = verify_ball_in_level_ball(path, "FIX-PATH9", p);
    checked += r1.checked + r2.checked;
    violations += static_cast<long long>(r1.violations.size() + r2.violations.size());
  }
  RunConfig cfg;
  cfg.fixture = "FIX-Z2-SINGLE";
  cfg.radius = 8;
  cfg.depth = 6;
  cfg.exact = "on";
  Scene scene = build_scene(cfg);
  for (int m = 1; m <= 6; ++m) {
    SubBallParams p;
    p.m = m;
    LemmaReport r1 = verify_level_ball_in_ball(scene, p);
    LemmaReport r2 = verify_ball_in_level_ball(scene, p);
    checked += r1.checked + r2.checked;
    skipped += r1.skipped_uncertified + r2.skipped_uncertified;
    violations += static_cast<long long>(r1.violations.size() + r2.violations.size());
  }
  out.pass = violations == 0 && skipped == 0 && checked > 40000;
  out.detail = fmt_count("checked", checked) + " " + fmt_count("violations", violations) + " " +
               fmt_count("skipped", skipped);
  return out;
}

// ---- C4: standard geodesics and the base-point approximation --------------

Outcome run_tight_base() {
  Outcome out;
  long long checked = 0, violations = 0;
  std::ostringstream detail;
  for (const std::string& fixture : {std::string("FIX-Z2-SINGLE"), std::string("FIX-Z2FREE")}) {
    RunConfig cfg;
    cfg.fixture = fixture;
    cfg.radius = 10;
    cfg.depth = 5;
    cfg.exact = "off";  // the pinned-window certified pipeline
    Scene scene = build_scene(cfg);
    SweepParams params;
    params.level = scene.delta;
    LemmaReport tight = verify_standard_geodesics(scene, params);
    LemmaReport base = verify_base_approx(scene, params);
    checked += tight.checked + base.checked;
    violations += static_cast<long long>(tight.violations.size() + base.violations.size());
    detail << fixture << " delta=" << scene.delta << " tight=" << tight.checked << "/"
           << tight.violations.size() << " base=" << base.checked << "/" << base.violations.size() << "; ";
  }
  out.pass = violations == 0 && checked > 50;
  out.detail = detail.str() + fmt_count("violations", violations);
  return out;
}

// ---- C5: convexity of deep horoball parts ----------------------------------

Outcome run_convexity() {
  Outcome out;
  long long checked = 0, violations = 0;
  std::ostringstream detail;
  for (const std::string& fixture : {std::string("FIX-Z2-SINGLE"), std::string("FIX-Z2FREE")}) {
    RunConfig cfg;
    cfg.fixture = fixture;
    cfg.radius = 10;
    cfg.depth = 5;
    cfg.exact = "off";
    Scene scene = build_scene(cfg);
    SweepParams params;
    params.max_targets = 200;
    params.max_pairs = 40000;
    LemmaReport rep = verify_convexity(scene, scene.delta, params);
    checked += rep.checked;
    violations += static_cast<long long>(rep.violations.size());
    detail << fixture << " m=" << scene.delta << " pairs=" << rep.checked << "/"
           << rep.violations.size() << "; ";
  }
  out.pass = violations == 0 && checked > 100;
  out.detail = detail.str() + fmt_count("violations", violations);
  return out;
}

// ---- C6: projection witnesses ------------------------------------------------

Outcome run_projection() {
  RunConfig cfg;
  cfg.fixture = "FIX-Z2-SINGLE";
  cfg.radius = 4096;
  cfg.depth = 12;
  cfg.master_horizon = 5;
  cfg.exact = "on";
  Scene scene = build_scene(cfg);
  scene.delta = std::max(scene.delta, 2);
  SurgerySweepParams sp;
  sp.dbar = scene.delta;
  sp.samples = 1200;
  sp.seed = 2024;
  sp.excursion.steps = 8;
  sp.excursion.offset_lo = 2;
  sp.excursion.offset_hi = 24;
  LemmaReport rep = run_projection_sweep(scene, sp);
  Outcome out;
  out.pass = rep.passed() && rep.checked >= 1000;
  out.detail = fmt_count("excursions", rep.checked) + " " +
               fmt_count("violations", static_cast<long long>(rep.violations.size()));
  return out;
}

// ---- C7: excursion replacement lemmas ----------------------------------------

Outcome run_excursions() {
  Outcome out;
  std::ostringstream detail;
  bool ok = true;

  RunConfig cfg;
  cfg.fixture = "FIX-Z2-SINGLE";
  cfg.radius = 8192;
  cfg.depth = 14;
  cfg.master_horizon = 5;
  cfg.exact = "on";
  Scene exact_scene = build_scene(cfg);
  exact_scene.delta = std::max(exact_scene.delta, 2);

  // far variant: wide offsets keep every vertex far from the anchor
  SurgerySweepParams far;
  far.dbar = exact_scene.delta;
  far.samples = 1100;
  far.seed = 31;
  far.excursion.steps = 4;
  far.excursion.offset_lo = 1400;
  far.excursion.offset_hi = 2600;
  far.excursion.level_cap = exact_scene.delta + 3;
  LemmaReport far_rep = run_far_excursion_sweep(exact_scene, far);
  long long far_instances = 0;
  for (const auto& [k, v] : far_rep.constants_observed) {
    if (k == "instances") far_instances = v;
  }
  ok = ok && far_rep.passed() && far_instances >= 300;
  detail << "far inst=" << far_instances << "/" << far_rep.violations.size() << "; ";

  // near variant, full k range on the exact fixture
  SurgerySweepParams near;
  near.dbar = exact_scene.delta;
  near.samples = 90;
  near.seed = 32;
  near.k_values = {-1, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  near.excursion.steps = 6;
  LemmaReport near_rep = run_near_excursion_sweep(exact_scene, near);
  long long near_instances = 0;
  for (const auto& [k, v] : near_rep.constants_observed) {
    if (k == "instances") near_instances = v;
  }
  ok = ok && near_rep.passed() && near_instances >= 700;
  detail << "near inst=" << near_instances << "/" << near_rep.violations.size() << "; ";

  // depth-bounded variant
  SurgerySweepParams deep;
  deep.dbar = exact_scene.delta;
  deep.samples = 1100;
  deep.seed = 33;
  deep.excursion.steps = 9;
  deep.excursion.offset_lo = 200;
  deep.excursion.offset_hi = 420;
  deep.excursion.level_cap = exact_scene.delta + 5;
  LemmaReport deep_rep = run_deep_excursion_sweep(exact_scene, deep);
  long long deep_instances = 0, beyond = 0;
  for (const auto& [k, v] : deep_rep.constants_observed) {
    if (k == "instances") deep_instances = v;
    if (k == "beyond_length_hypothesis") beyond = v;
  }
  ok = ok && deep_rep.passed() && deep_instances >= 300 && beyond > 0;
  detail << "deep inst=" << deep_instances << "/" << deep_rep.violations.size() << "; ";

  // flatness of the replacement-length table across translated cosets
  RunConfig zf;
  zf.fixture = "FIX-Z2FREE";
  zf.radius = 64;
  zf.depth = 6;
  zf.exact = "off";
  Scene certified_scene = build_scene(zf);
  SurgerySweepParams flat;
  flat.dbar = certified_scene.delta;
  flat.samples = 40;
  flat.seed = 34;
  flat.k_values = {-1, 0, 1, 2};
  flat.max_horoballs = 10;
  flat.excursion.steps = 5;
  LemmaReport flat_rep = run_near_excursion_sweep(certified_scene, flat);
  ok = ok && flat_rep.passed();
  std::map<int, std::set<long long>> f_by_k;
  std::map<int, long long> spread_by_k;
  for (const auto& [key, v] : flat_rep.constants_observed) {
    if (key.rfind("F_k", 0) == 0 && key.find("_r") != std::string::npos) {
      const int k = std::stoi(key.substr(3, key.find("_r") - 3));
      f_by_k[k].insert(v);
    }
    if (key.rfind("F_spread_k", 0) == 0) spread_by_k[std::stoi(key.substr(10))] = v;
  }
  int ks_with_three_r = 0;
  bool flat_ok = true;
  for (int k : flat.k_values) {
    long long rs = 0;
    for (const auto& [key, v] : flat_rep.constants_observed) {
      if (key.rfind("F_k" + std::to_string(k) + "_r", 0) == 0) ++rs;
    }
    if (rs >= 3) {
      ++ks_with_three_r;
      auto it = spread_by_k.find(k);
      if (it == spread_by_k.end() || it->second != 0) flat_ok = false;
    }
  }
  ok = ok && flat_ok && ks_with_three_r >= 3;
  detail << "flat k-rows(>=3r)=" << ks_with_three_r << " spread0=" << (flat_ok ? "yes" : "no");

  out.pass = ok;
  out.detail = detail.str();
  return out;
}

// ---- C8: closeness constants ---------------------------------------------------

Outcome run_constants() {
  Outcome out;
  bool ok = true;
  for (long long delta = 1; delta <= 20; ++delta) {
    if (closeness_M(delta) != 290 * delta + 3) ok = false;
    if (depth_band_K(delta) != 580 * delta + 6) ok = false;
  }
  ok = ok && closeness_M(1) == 293 && depth_band_K(1) == 586;
  out.pass = ok;
  out.detail = "M(1)=293 K(1)=586 checked delta=1..20";
  return out;
}

// ---- C9: connecting-path search vs materialized oracle -------------------------

Outcome run_dagger_oracle() {
  Outcome out;
  long long regions = 0, mismatches = 0, toobig = 0;
  struct Probe {
    const char* fixture;
    int radius, depth;
  };
  const Probe probes[] = {{"FIX-Z2-SINGLE", 16, 5}, {"FIX-Z2FREE", 4, 3}, {"FIX-F2-LINE", 6, 3}};
  for (const Probe& probe : probes) {
    RunConfig cfg;
    cfg.fixture = probe.fixture;
    cfg.radius = probe.radius;
    cfg.depth = probe.depth;
    Scene scene = build_scene(cfg);
    std::vector<CuspedVertex> pool;
    for (const auto& [v, d] : scene.master->values) {
      if (scene.master->certified(v)) pool.push_back(v);
    }
    std::sort(pool.begin(), pool.end(), vertex_less);
    Rng rng(555);
    const int n_max = 40;
    // oracle regions depend only on the avoidance radius and depth cap, so
    // identical specifications reuse one materialization (per seed vertex)
    std::map<std::tuple<long long, long long, std::string>, oracle::ExplicitRegion> region_cache;
    for (int trial = 0; trial < 40 && !pool.empty(); ++trial) {
      const CuspedVertex& x = pool[static_cast<std::size_t>(rng.below(pool.size()))];
      const CuspedVertex& y = pool[static_cast<std::size_t>(rng.below(pool.size()))];
      if (x == y) continue;
      for (const DaggerVariant variant : {DaggerVariant::Plain, DaggerVariant::Hat}) {
        const int delta = static_cast<int>(rng.below(2));  // 0 makes the ball bite
        DaggerWitness w;
        try {
          w = search_connecting_path(scene, x, y, delta, n_max, variant);
        } catch (const InconclusiveError&) {
          continue;
        }
        const long long depth_cap = (variant == DaggerVariant::Hat) ? depth_band_K(delta) : -1;
        auto contains = [&scene, &w, depth_cap](const CuspedVertex& v) {
          if (depth_cap >= 0 && v.level > depth_cap) return false;
          if (w.forbidden < 0) return true;
          auto dv = scene.master->certified_value(v);
          if (dv) return *dv > w.forbidden;
          return scene.master->lower_bound(v) > w.forbidden;
        };
        if (!contains(x) || !contains(y)) continue;
        const auto key = std::make_tuple(std::max(-1LL, w.forbidden), depth_cap,
                                         scene.graph->format(x));
        auto cached = region_cache.find(key);
        if (cached == region_cache.end()) {
          try {
            cached = region_cache.emplace(key, oracle::materialize_region(*scene.graph, x, contains, 10'000))
                         .first;
          } catch (const SizeLimitError&) {
            ++toobig;
            continue;
          }
        }
        ++regions;
        const auto od = oracle::region_bfs_distance(cached->second, x, y);
        const bool oracle_found = od.has_value() && *od <= n_max;
        if (w.n.has_value() != oracle_found) {
          ++mismatches;
        } else if (w.n && *w.n != *od) {
          ++mismatches;
        }
      }
    }
  }
  out.pass = regions >= 50 && mismatches == 0;
  out.detail = fmt_count("regions", regions) + " " + fmt_count("mismatches", mismatches) + " " +
               fmt_count("oversized", toobig);
  return out;
}

// ---- C10: byte determinism -------------------------------------------------------

Outcome run_determinism() {
  Outcome out;
  bool ok = true;
  {
    RunConfig cfg;
    cfg.fixture = "FIX-Z2-SINGLE";
    cfg.radius = 6;
    cfg.depth = 3;
    cfg.samples = 25;
    cfg.seed = 9;
    ok = ok && emit(run_suite(cfg), "json") == emit(run_suite(cfg), "json");
  }
  {
    RunConfig cfg;
    cfg.fixture = "FIX-Z2FREE";
    cfg.radius = 5;
    cfg.depth = 3;
    cfg.samples = 10;
    cfg.seed = 10;
    cfg.lemmas = {"standard-geodesic", "projection", "excursion-near", "connecting-path"};
    ok = ok && emit(run_suite(cfg), "json") == emit(run_suite(cfg), "json");
  }
  {
    RunConfig cfg;
    cfg.fixture = "FIX-PATH9";
    cfg.depth = 6;
    cfg.seed = 11;
    ok = ok && emit(run_suite(cfg), "json") == emit(run_suite(cfg), "json");
  }
  out.pass = ok;
  out.detail = ok ? "three fixtures byte-identical" : "rerun differed";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  // optional filter: run only the named criteria (e.g. "C2 C7")
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) only.insert(argv[i]);
  const Criterion criteria[] = {
      {"C1", "horoball edge rules match the explicit oracle", run_edge_rules},
      {"C2", "geodesic normal form and Hausdorff bound", run_geodesic_form},
      {"C3", "level-ball inclusions", run_subball},
      {"C4", "standard geodesics and base-point approximation", run_tight_base},
      {"C5", "deep horoball convexity", run_convexity},
      {"C6", "projection witnesses", run_projection},
      {"C7", "excursion replacement lemmas", run_excursions},
      {"C8", "closeness constants", run_constants},
      {"C9", "connecting-path search equals the materialized oracle", run_dagger_oracle},
      {"C10", "byte-identical reruns", run_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    std::string error;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      error = std::string(" exception: ") + e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %s: %s (%lld ms) %s%s\n", out.pass ? "PASS" : "FAIL", c.id.c_str(), c.label.c_str(),
                static_cast<long long>(ms), out.detail.c_str(), error.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
