#include "cusp/suite.hpp"

#include <algorithm>
#include <chrono>

namespace cusp {

namespace {

const std::vector<std::string> kHoroballLemmas = {
    "geodesic-form",
    "level-ball-in-ball",
    "ball-in-level-ball",
};

const std::vector<std::string> kCuspedLemmas = {
    "standard-geodesic", "base-approx",    "convexity",       "level-ball-in-ball",
    "ball-in-level-ball", "projection",    "excursion-far",   "excursion-near",
    "excursion-depth",    "compress",      "escape-ray",      "connecting-path",
};

std::uint64_t lemma_seed(std::uint64_t base, const std::string& lemma) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ base;
  for (unsigned char c : lemma) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

std::vector<std::string> applicable_lemmas(const std::string& fixture) {
  return is_horoball_fixture(fixture) ? kHoroballLemmas : kCuspedLemmas;
}

HoroballGraph make_horoball_fixture(const std::string& name, int depth_cap) {
  if (name == "FIX-PATH9") {
    return HoroballGraph(std::make_shared<LevelGraph>(LevelGraph::path(9)), depth_cap);
  }
  if (name == "FIX-GRID7") {
    return HoroballGraph(std::make_shared<LevelGraph>(LevelGraph::grid(7, 7)), depth_cap);
  }
  throw std::invalid_argument("unknown horoball fixture: " + name);
}

Scene build_scene(const RunConfig& cfg) {
  auto graph = std::make_shared<CuspedGraph>(make_cusped_fixture(cfg.fixture, cfg.radius, cfg.depth, cfg.b2));
  BfsOptions master;
  master.horizon = cfg.master_horizon;
  master.slack = 0;
  master.max_vertices = cfg.max_vertices;
  Scene scene = make_scene(cfg.fixture, graph, master, cfg.use_exact(graph->single_horoball()));
  DeltaPolicy policy;
  policy.fixed = cfg.fixed_delta;
  policy.sample_quadruples = cfg.delta_quadruples;
  policy.max_sources = cfg.delta_max_sources;
  policy.max_level = cfg.delta_max_level;
  policy.seed = cfg.seed;
  scene.delta_report = estimate_delta(scene, policy);
  scene.delta = cfg.fixed_delta ? *cfg.fixed_delta : std::max(scene.delta_report.delta_hat, 1);
  return scene;
}

namespace {

LemmaReport run_cusped_lemma(Scene& scene, const RunConfig& cfg, const std::string& lemma) {
  const int level = cfg.sweep_level >= 0 ? cfg.sweep_level : scene.delta;
  SweepParams sweep;
  sweep.level = level;
  SurgerySweepParams sp;
  sp.dbar = level;
  sp.samples = cfg.samples;
  sp.seed = lemma_seed(cfg.seed, lemma);
  sp.k_values = cfg.k_values;
  sp.excursion.dbar = level;
  sp.excursion.steps = cfg.excursion_steps;
  sp.excursion.offset_lo = cfg.offset_lo;
  sp.excursion.offset_hi = cfg.offset_hi;

  if (lemma == "standard-geodesic") return verify_standard_geodesics(scene, sweep);
  if (lemma == "base-approx") return verify_base_approx(scene, sweep);
  if (lemma == "convexity") return verify_convexity(scene, level, sweep);
  if (lemma == "level-ball-in-ball") {
    SubBallParams p;
    p.m = level;
    return verify_level_ball_in_ball(scene, p);
  }
  if (lemma == "ball-in-level-ball") {
    SubBallParams p;
    p.m = level;
    return verify_ball_in_level_ball(scene, p);
  }
  if (lemma == "projection") return run_projection_sweep(scene, sp);
  if (lemma == "excursion-far") return run_far_excursion_sweep(scene, sp);
  if (lemma == "excursion-near") return run_near_excursion_sweep(scene, sp);
  if (lemma == "excursion-depth") return run_deep_excursion_sweep(scene, sp);
  if (lemma == "compress") return run_compress_sweep(scene, sp);
  if (lemma == "escape-ray") return run_escape_sweep(scene, sp);
  if (lemma == "connecting-path") {
    DaggerSweepParams dp;
    dp.samples = cfg.samples;
    dp.n_max = cfg.dagger_nmax;
    dp.delta = cfg.dagger_delta;
    dp.seed = lemma_seed(cfg.seed, lemma);
    return run_dagger_sweep(scene, dp);
  }
  throw ConfigError("lemma not applicable to cusped fixtures: " + lemma);
}

LemmaReport run_horoball_lemma(const HoroballGraph& h, const RunConfig& cfg, const std::string& lemma) {
  const std::string instance = cfg.fixture + " D=" + std::to_string(cfg.depth);
  if (lemma == "geodesic-form") {
    GeodesicFormParams p;
    return verify_geodesic_form(h, instance, p);
  }
  const int m = std::max(1, cfg.sweep_level >= 0 ? cfg.sweep_level : 1);
  if (lemma == "level-ball-in-ball") {
    LemmaReport total;
    for (int level = m; level <= std::min(cfg.depth, m + 2); ++level) {
      SubBallParams p;
      p.m = level;
      LemmaReport r = verify_level_ball_in_ball(h, instance + " m=" + std::to_string(level), p);
      if (total.lemma.empty()) total = r;
      else {
        total.checked += r.checked;
        total.skipped_uncertified += r.skipped_uncertified;
        for (auto& v : r.violations) total.violations.push_back(std::move(v));
      }
    }
    total.instance = instance;
    return total;
  }
  if (lemma == "ball-in-level-ball") {
    LemmaReport total;
    for (int level = m; level <= std::min(cfg.depth, m + 2); ++level) {
      SubBallParams p;
      p.m = level;
      LemmaReport r = verify_ball_in_level_ball(h, instance + " m=" + std::to_string(level), p);
      if (total.lemma.empty()) total = r;
      else {
        total.checked += r.checked;
        total.skipped_uncertified += r.skipped_uncertified;
        for (auto& v : r.violations) total.violations.push_back(std::move(v));
      }
    }
    total.instance = instance;
    return total;
  }
  throw ConfigError("lemma not applicable to horoball fixtures: " + lemma);
}

}  // namespace

SuiteReport run_suite(const RunConfig& cfg) {
  SuiteReport suite;
  suite.config_digest = config_digest(cfg);
  suite.seed = cfg.seed;
  std::vector<std::string> lemmas = cfg.lemmas.empty() ? applicable_lemmas(cfg.fixture) : cfg.lemmas;

  if (is_horoball_fixture(cfg.fixture)) {
    HoroballGraph h = make_horoball_fixture(cfg.fixture, cfg.depth);
    for (const std::string& lemma : lemmas) {
      Timer t;
      LemmaReport rep = run_horoball_lemma(h, cfg, lemma);
      rep.wall_time_ms = cfg.timings ? t.ms() : 0;
      suite.reports.push_back(std::move(rep));
    }
  } else {
    Scene scene = build_scene(cfg);
    suite.delta_estimates.push_back(scene.delta_report);
    for (const std::string& lemma : lemmas) {
      Timer t;
      LemmaReport rep = run_cusped_lemma(scene, cfg, lemma);
      rep.wall_time_ms = cfg.timings ? t.ms() : 0;
      suite.reports.push_back(std::move(rep));
    }
  }
  suite.finalize();
  return suite;
}

std::string emit(const SuiteReport& report, const std::string& format) {
  if (format == "json") return to_json(report);
  if (format == "csv") return to_csv(report);
  if (format == "text") return to_text(report);
  throw ConfigError("unknown format: " + format);
}

}  // namespace cusp
