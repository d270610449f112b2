#include "cusp/metric.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace cusp {

namespace {

int ceil_log2_ll(long long n) {
  int k = 0;
  long long p = 1;
  while (p < n) {
    p <<= 1;
    ++k;
  }
  return k;
}

}  // namespace

std::vector<std::pair<int, Word>> Scene::visible_horoballs(int level) const {
  std::set<std::pair<int, Word>> found;
  for (const auto& [v, d] : master->values) {
    if (d > master->cert_limit() || v.level != level || v.peripheral < 0) continue;
    found.emplace(v.peripheral, graph->coset_rep(v));
  }
  return {found.begin(), found.end()};
}

Scene make_scene(const std::string& fixture, std::shared_ptr<CuspedGraph> graph, const BfsOptions& master_opts,
                 bool prefer_exact) {
  Scene s;
  s.fixture = fixture;
  s.graph = std::move(graph);
  BfsOptions field_opts;
  field_opts.slack = 1;
  field_opts.max_vertices = master_opts.max_vertices;
  s.fields = std::make_shared<FieldProvider>(*s.graph, field_opts, 64);
  if (s.graph->single_horoball()) {
    s.exact = std::make_shared<ExactProvider>(*s.graph);
    s.prefer_exact = prefer_exact;
  }
  BfsOptions mo = master_opts;
  mo.record_parents = true;
  s.master = std::make_shared<DistanceField>(certified_bfs(*s.graph, s.graph->star(), mo));
  return s;
}

DeltaEstimateReport estimate_delta(Scene& scene, const DeltaPolicy& policy) {
  DeltaEstimateReport rep;
  rep.instance = scene.fixture;
  if (policy.fixed) {
    rep.delta_hat = *policy.fixed;
    rep.exhaustive = false;
    return rep;
  }
  // candidate pool: certified vertices near the base point (far vertices
  // cannot certify their pairwise distances against the window)
  const bool use_exact_pool = scene.prefer_exact && scene.exact;
  int max_value = policy.max_value;
  if (max_value < 0) {
    max_value = use_exact_pool ? scene.master->horizon_completed
                               : std::max(2, scene.master->cert_limit() / 3);
  }
  std::vector<CuspedVertex> pool;
  for (const auto& [v, d] : scene.master->values) {
    if (d > scene.master->cert_limit() || d > max_value) continue;
    if (policy.max_level >= 0 && v.level > policy.max_level) continue;
    pool.push_back(v);
  }
  std::sort(pool.begin(), pool.end(), vertex_less);
  rep.pool_size = static_cast<long long>(pool.size());
  Rng rng(policy.seed);
  if (static_cast<int>(pool.size()) > policy.max_sources) {
    // deterministic downsample: keeps pairwise field extraction affordable
    std::vector<CuspedVertex> sampled;
    sampled.reserve(static_cast<std::size_t>(policy.max_sources));
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (int i = 0; i < policy.max_sources; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
      std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
      sampled.push_back(pool[idx[static_cast<std::size_t>(i)]]);
    }
    std::sort(sampled.begin(), sampled.end(), vertex_less);
    pool = std::move(sampled);
  }
  const int n = static_cast<int>(pool.size());
  if (n < 4) {
    rep.exhaustive = true;
    return rep;
  }
  // pairwise distance matrix (certified values; -1 when unknown)
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  const bool use_exact = scene.prefer_exact && scene.exact;
  for (int i = 0; i < n; ++i) {
    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    if (use_exact) {
      for (int j = i + 1; j < n; ++j) {
        const int d = scene.exact->metric().distance(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
        dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
      }
    } else {
      BfsOptions opts;
      opts.slack = 0;
      // pool members sit within max_value of the base point, so their
      // pairwise distances never exceed 2 * max_value
      opts.horizon = 2 * max_value;
      DistanceField f = certified_bfs(*scene.graph, pool[static_cast<std::size_t>(i)], opts);
      for (int j = i + 1; j < n; ++j) {
        auto d = f.certified_value(pool[static_cast<std::size_t>(j)]);
        if (d) {
          dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *d;
          dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = *d;
        }
      }
    }
  }
  auto defect = [&dist](int a, int b, int c, int d) -> long long {
    const int ab = dist[a][b], cd = dist[c][d], ac = dist[a][c], bd = dist[b][d], ad = dist[a][d], bc = dist[b][c];
    if (ab < 0 || cd < 0 || ac < 0 || bd < 0 || ad < 0 || bc < 0) return -1;
    long long s1 = ab + cd, s2 = ac + bd, s3 = ad + bc;
    long long hi = std::max({s1, s2, s3});
    long long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    return hi - mid;
  };
  long long best = 0;
  const bool exhaustive = n <= policy.exhaustive_limit;
  rep.exhaustive = exhaustive;
  if (exhaustive) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            const long long def = defect(a, b, c, d);
            if (def < 0) {
              ++rep.quadruples_skipped;
            } else {
              ++rep.quadruples_checked;
              best = std::max(best, def);
            }
          }
  } else {
    for (long long s = 0; s < policy.sample_quadruples; ++s) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
      const long long def = defect(a, b, c, d);
      if (def < 0) {
        ++rep.quadruples_skipped;
      } else {
        ++rep.quadruples_checked;
        best = std::max(best, def);
      }
    }
  }
  rep.doubled_defect_max = best;
  rep.delta_hat = static_cast<int>((best + 1) / 2);
  return rep;
}

StandardGeodesicOutcome build_standard_geodesic(Scene& scene, const CuspedVertex& target,
                                                std::optional<bool> exact_override) {
  StandardGeodesicOutcome out;
  const CuspedGraph& graph = *scene.graph;
  const MarkedGroup& group = graph.group();
  if (target.level < 1) throw std::invalid_argument("target must be a horoball vertex");
  const int dbar = target.level;
  const auto total = scene.dist_from_star(target, exact_override);
  if (!total) return out;
  const Word rep = graph.coset_rep(target);

  // entry candidates: certified slab vertices of the target's horoball
  std::vector<CuspedVertex> candidates =
      certified_slab_vertices(graph, *scene.master, target.peripheral, rep, dbar);
  std::optional<CuspedVertex> best;
  int best_approach = kUnbounded, best_apex = -1;
  for (const CuspedVertex& x : candidates) {
    const auto dx = scene.dist_from_star(x, exact_override);
    if (!dx) continue;
    const int dp = group.distance(x.elem, target.elem);
    // inner shape: up a-dbar, at most 3 hops at apex a, down a-dbar
    int apex_needed = -1;
    long long inner = -1;
    const int hi = std::max(dbar, ceil_log2_ll(std::max<long long>(dp, 1))) + 1;
    for (int a = dbar; a <= hi; ++a) {
      const long long span = 1LL << a;
      const long long hops = dp == 0 ? 0 : (dp + span - 1) / span;
      if (hops > 3) continue;
      const long long len = 2LL * (a - dbar) + hops;
      if (inner < 0 || len < inner) {
        inner = len;
        apex_needed = a;
      }
    }
    if (inner < 0) continue;
    if (*dx + inner == *total) {
      if (apex_needed > graph.depth_cap()) {
        out.depth_capped = true;
        continue;
      }
      if (*dx < best_approach || (*dx == best_approach && best && vertex_less(x, *best))) {
        best = x;
        best_approach = *dx;
        best_apex = apex_needed;
      }
    }
  }
  if (!best) return out;

  StandardGeodesic sg;
  sg.entry = *best;
  sg.apex = best_apex;
  sg.total_length = *total;
  sg.approach = scene.master->path_to(*best);
  const int dbar_lvl = dbar;
  for (int k = dbar_lvl; k <= best_apex; ++k) {
    sg.ascent.push_back({best->elem, static_cast<std::int16_t>(k), target.peripheral});
  }
  // horizontal hops along a peripheral geodesic, prefix steps of 2^apex
  const Word q = group.multiply(group.inverse(best->elem), target.elem);
  sg.horizontal.push_back({best->elem, static_cast<std::int16_t>(best_apex), target.peripheral});
  const long long span = 1LL << best_apex;
  for (std::size_t pos = 0; pos < q.size();) {
    const std::size_t next = std::min(q.size(), pos + static_cast<std::size_t>(span));
    Word prefix = q.substr(0, next);
    sg.horizontal.push_back(
        {group.multiply(best->elem, prefix), static_cast<std::int16_t>(best_apex), target.peripheral});
    pos = next;
  }
  for (int k = best_apex; k >= dbar_lvl; --k) {
    sg.descent.push_back({target.elem, static_cast<std::int16_t>(k), target.peripheral});
  }
  out.geodesic = std::move(sg);
  return out;
}

LemmaReport verify_standard_geodesics(Scene& scene, const SweepParams& params) {
  LemmaReport rep;
  rep.lemma = "standard-geodesic";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.level >= 0 ? params.level : scene.delta;
  rep.constant("level", dbar);
  const CuspedGraph& graph = *scene.graph;
  long long targets_seen = 0, entry_pairs = 0, capped = 0;
  int max_tau = 0, max_entry_gap = 0;
  DistanceProvider& prov = scene.provider(params.exact_override);
  for (const auto& [i, repw] : scene.visible_horoballs(dbar)) {
    std::vector<CuspedVertex> targets = certified_slab_vertices(graph, *scene.master, i, repw, dbar);
    std::vector<CuspedVertex> entries;
    std::vector<CuspedVertex> built_targets;
    for (const CuspedVertex& t : targets) {
      if (targets_seen >= params.max_targets) break;
      ++targets_seen;
      StandardGeodesicOutcome got = build_standard_geodesic(scene, t, params.exact_override);
      if (!got.geodesic) {
        if (got.depth_capped) {
          ++capped;
          ++rep.skipped_uncertified;
        } else {
          rep.violation("no-standard-shape", graph.format(t));
        }
        continue;
      }
      ++rep.checked;
      const StandardGeodesic& sg = *got.geodesic;
      const int tau_len = segment_length(sg.horizontal);
      max_tau = std::max(max_tau, tau_len);
      if (tau_len > 3) rep.violation("horizontal-too-long", graph.format(t), {{"tau", tau_len}});
      const int rebuilt = segment_length(sg.approach) + segment_length(sg.ascent) + tau_len + segment_length(sg.descent);
      if (rebuilt != sg.total_length) {
        rep.violation("length-mismatch", graph.format(t), {{"rebuilt", rebuilt}, {"expected", sg.total_length}});
      }
      entries.push_back(sg.entry);
      built_targets.push_back(t);
    }
    // entry vertices of any two targets in one horoball stay 2*delta+1 close
    for (std::size_t a = 0; a < entries.size(); ++a) {
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        if (entry_pairs >= params.max_pairs) break;
        ++entry_pairs;
        auto d = prov.distance(entries[a], entries[b]);
        if (!d) {
          ++rep.skipped_uncertified;
          continue;
        }
        ++rep.checked;
        max_entry_gap = std::max(max_entry_gap, *d);
        if (*d > 2 * scene.delta + 1) {
          rep.violation("entry-gap", graph.format(built_targets[a]) + " / " + graph.format(built_targets[b]),
                        {{"gap", *d}, {"bound", 2 * scene.delta + 1}});
        }
      }
    }
  }
  rep.constant("targets", targets_seen);
  rep.constant("max_tau", max_tau);
  rep.constant("max_entry_gap", max_entry_gap);
  rep.constant("depth_capped", capped);
  return rep;
}

LemmaReport verify_base_approx(Scene& scene, const SweepParams& params) {
  LemmaReport rep;
  rep.lemma = "base-approx";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.level >= 0 ? params.level : scene.delta;
  rep.constant("level", dbar);
  const CuspedGraph& graph = *scene.graph;
  DistanceProvider& prov = scene.provider(params.exact_override);
  long long targets_seen = 0;
  int max_slack = 0;
  for (const auto& [i, repw] : scene.visible_horoballs(dbar)) {
    CuspedVertex z;
    try {
      z = closest_level_vertex(graph, *scene.master, i, repw, dbar);
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
      continue;
    }
    const auto dz = scene.dist_from_star(z, params.exact_override);
    if (!dz) {
      ++rep.skipped_uncertified;
      continue;
    }
    for (const CuspedVertex& t : certified_slab_vertices(graph, *scene.master, i, repw, dbar)) {
      if (targets_seen >= params.max_targets) break;
      ++targets_seen;
      const auto dt = scene.dist_from_star(t, params.exact_override);
      const auto dzt = prov.distance(z, t);
      if (!dt || !dzt) {
        ++rep.skipped_uncertified;
        continue;
      }
      ++rep.checked;
      const int mid = *dz + *dzt;
      if (*dt > mid) {
        rep.violation("triangle", graph.format(t), {{"d_star_t", *dt}, {"sum", mid}});
      }
      if (mid > 2 * scene.delta + 1 + *dt) {
        rep.violation("base-overshoot", graph.format(t),
                      {{"sum", mid}, {"bound", 2 * scene.delta + 1 + *dt}});
      }
      max_slack = std::max(max_slack, mid - *dt);
    }
  }
  rep.constant("targets", targets_seen);
  rep.constant("max_overshoot", max_slack);
  return rep;
}

LemmaReport verify_convexity(Scene& scene, int m, const SweepParams& params) {
  LemmaReport rep;
  rep.lemma = "convexity";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  rep.constant("m", m);
  const CuspedGraph& graph = *scene.graph;
  DistanceProvider& prov = scene.provider(params.exact_override);
  long long pairs = 0;
  for (const auto& [i, repw] : scene.visible_horoballs(m)) {
    // sources: certified vertices of this horoball at depth >= m
    std::vector<CuspedVertex> members;
    for (const auto& [v, d] : scene.master->values) {
      if (d > scene.master->cert_limit() || v.peripheral != i || v.level < m) continue;
      if (graph.coset_rep(v) != repw) continue;
      members.push_back(v);
    }
    std::sort(members.begin(), members.end(), vertex_less);
    if (static_cast<long long>(members.size()) > params.max_targets) {
      members.resize(static_cast<std::size_t>(params.max_targets));
    }
    const int ip = i;
    for (const CuspedVertex& s : members) {
      BfsOptions opts;
      opts.slack = 0;
      opts.contains = [ip, m](const CuspedVertex& v) { return v.peripheral == ip && v.level >= m; };
      DistanceField inner = certified_bfs(graph, s, opts);
      for (const CuspedVertex& t : members) {
        if (!vertex_less(s, t)) continue;
        if (pairs >= params.max_pairs) break;
        ++pairs;
        const auto d_inner = inner.certified_value(t);
        const auto d_space = prov.distance(s, t);
        if (!d_inner || !d_space) {
          ++rep.skipped_uncertified;
          continue;
        }
        ++rep.checked;
        if (*d_space != *d_inner) {
          rep.violation("detour", graph.format(s) + " / " + graph.format(t),
                        {{"d_space", *d_space}, {"d_horoball", *d_inner}});
        }
      }
    }
  }
  rep.constant("pairs", pairs);
  return rep;
}

// ---- level-ball inclusions over cusped fixtures -------------------------

namespace {

struct SlabPair {
  CuspedVertex z, t;
  int d_level;               // exact level metric (intrinsic)
  std::optional<int> d_all;  // certified space distance
};

// enumerates certified slab pairs of every visible horoball at level m
std::vector<SlabPair> slab_pairs(Scene& scene, int m, long long max_pairs, std::optional<bool> exact_override) {
  std::vector<SlabPair> out;
  const CuspedGraph& graph = *scene.graph;
  DistanceProvider& prov = scene.provider(exact_override);
  for (const auto& [i, repw] : scene.visible_horoballs(m)) {
    std::vector<CuspedVertex> slab = certified_slab_vertices(graph, *scene.master, i, repw, m);
    for (std::size_t a = 0; a < slab.size(); ++a) {
      for (std::size_t b = a + 1; b < slab.size(); ++b) {
        if (static_cast<long long>(out.size()) >= max_pairs) return out;
        SlabPair p;
        p.z = slab[a];
        p.t = slab[b];
        const auto dl = graph.intrinsic_level_distance(p.z, p.t);
        if (!dl) continue;
        p.d_level = *dl;
        p.d_all = prov.distance(p.z, p.t);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

}  // namespace

LemmaReport verify_level_ball_in_ball(Scene& scene, const SubBallParams& params) {
  LemmaReport rep;
  rep.lemma = "level-ball-in-ball";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  rep.constant("m", params.m);
  const CuspedGraph& graph = *scene.graph;
  for (const SlabPair& p : slab_pairs(scene, params.m, params.max_pairs, params.exact_override)) {
    if (!p.d_all) {
      ++rep.skipped_uncertified;
      continue;
    }
    // tightest n >= 1 with d^m <= 2^n
    const int n = std::max(1, ceil_log2_ll(std::max(1, p.d_level)));
    if (n > params.n_max) continue;
    ++rep.checked;
    if (*p.d_all > 2 * n) {
      rep.violation("ball-escape", graph.format(p.z) + " / " + graph.format(p.t),
                    {{"d_level", p.d_level}, {"n", n}, {"d", *p.d_all}, {"bound", 2 * n}});
    }
  }
  return rep;
}

LemmaReport verify_ball_in_level_ball(Scene& scene, const SubBallParams& params) {
  LemmaReport rep;
  rep.lemma = "ball-in-level-ball";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  rep.constant("m", params.m);
  const CuspedGraph& graph = *scene.graph;
  for (const SlabPair& p : slab_pairs(scene, params.m, params.max_pairs, params.exact_override)) {
    if (!p.d_all) {
      ++rep.skipped_uncertified;
      continue;
    }
    ++rep.checked;
    const int d = *p.d_all;
    // d <= 2n+3  =>  d^m <= 3*2^n
    const int n1 = std::max(0, (d - 3 + 1) / 2);
    if ((3LL << n1) < p.d_level) {
      rep.violation("wide-level-gap-odd", graph.format(p.z) + " / " + graph.format(p.t),
                    {{"d", d}, {"n", n1}, {"d_level", p.d_level}, {"bound", 3LL << n1}});
    }
    // d <= 2n+2  =>  d^m <= 2^(n+1)
    const int n2 = std::max(0, (d - 2 + 1) / 2);
    if ((2LL << n2) < p.d_level) {
      rep.violation("wide-level-gap-even", graph.format(p.z) + " / " + graph.format(p.t),
                    {{"d", d}, {"n", n2}, {"d_level", p.d_level}, {"bound", 2LL << n2}});
    }
    // combined form: B_k(z) n H(m) inside the level ball of radius 2^(floor(k/2)+1)
    if (d > 0) {
      const long long bound = 1LL << (d / 2 + 1);
      if (p.d_level > bound) {
        rep.violation("combined-form", graph.format(p.z) + " / " + graph.format(p.t),
                      {{"k", d}, {"d_level", p.d_level}, {"bound", bound}});
      }
    }
  }
  return rep;
}

// ---- standalone horoball versions ---------------------------------------

namespace {

std::vector<HoroVertex> slab_vertices(const HoroballGraph& h, int m) {
  std::vector<HoroVertex> out;
  for (int v = 0; v < h.level_graph().vertex_count(); ++v) out.push_back({v, m});
  return out;
}

std::string hv(const HoroballGraph& h, const HoroVertex& v) {
  return h.level_graph().label(v.base) + "@" + std::to_string(v.level);
}

}  // namespace

LemmaReport verify_level_ball_in_ball(const HoroballGraph& h, const std::string& instance,
                                      const SubBallParams& params) {
  LemmaReport rep;
  rep.lemma = "level-ball-in-ball";
  rep.instance = instance;
  rep.constant("m", params.m);
  const std::vector<HoroVertex> slab = slab_vertices(h, params.m);
  long long pairs = 0;
  for (const HoroVertex& z : slab) {
    for (const HoroVertex& t : slab) {
      if (t <= z || pairs >= params.max_pairs) continue;
      ++pairs;
      const auto dl = h.level_distance(params.m, z, t);
      if (!dl) continue;
      const int n = std::max(1, ceil_log2_ll(std::max(1, *dl)));
      if (n > params.n_max) continue;
      ++rep.checked;
      const int d = h.exact_distance(z, t);
      if (d > 2 * n) {
        rep.violation("ball-escape", hv(h, z) + " / " + hv(h, t),
                      {{"d_level", *dl}, {"n", n}, {"d", d}, {"bound", 2 * n}});
      }
    }
    // setwise: level ball of radius 2^n built by slab BFS, space ball by the
    // exact metric; the level ball must sit inside the 2n space ball
    for (int n = 1; n <= params.n_max; ++n) {
      for (const HoroVertex& t : h.level_ball(z, static_cast<int>(std::min(1LL << n, 1LL << 20)))) {
        ++rep.checked;
        if (h.exact_distance(z, t) > 2 * n) {
          rep.violation("setwise-escape", hv(h, z) + " / " + hv(h, t), {{"n", n}});
        }
      }
    }
  }
  return rep;
}

LemmaReport verify_ball_in_level_ball(const HoroballGraph& h, const std::string& instance,
                                      const SubBallParams& params) {
  LemmaReport rep;
  rep.lemma = "ball-in-level-ball";
  rep.instance = instance;
  rep.constant("m", params.m);
  const std::vector<HoroVertex> slab = slab_vertices(h, params.m);
  long long pairs = 0;
  for (const HoroVertex& z : slab) {
    for (const HoroVertex& t : slab) {
      if (t <= z || pairs >= params.max_pairs) continue;
      ++pairs;
      const auto dl = h.level_distance(params.m, z, t);
      if (!dl) continue;
      ++rep.checked;
      const int d = h.exact_distance(z, t);
      const int n1 = std::max(0, (d - 3 + 1) / 2);
      if ((3LL << n1) < *dl) {
        rep.violation("wide-level-gap-odd", hv(h, z) + " / " + hv(h, t),
                      {{"d", d}, {"n", n1}, {"d_level", *dl}});
      }
      const int n2 = std::max(0, (d - 2 + 1) / 2);
      if ((2LL << n2) < *dl) {
        rep.violation("wide-level-gap-even", hv(h, z) + " / " + hv(h, t),
                      {{"d", d}, {"n", n2}, {"d_level", *dl}});
      }
      if (d > 0 && *dl > (1LL << (d / 2 + 1))) {
        rep.violation("combined-form", hv(h, z) + " / " + hv(h, t), {{"k", d}, {"d_level", *dl}});
      }
    }
  }
  return rep;
}

// ---- geodesic normal form ------------------------------------------------

std::vector<std::vector<HoroVertex>> enumerate_geodesics(const HoroballGraph& h, const HoroVertex& x,
                                                         const HoroVertex& y, std::size_t cap) {
  // distances from both endpoints over the truncated horoball
  auto bfs = [&h](const HoroVertex& s) {
    std::unordered_map<HoroVertex, int, HoroVertexHash> dist;
    std::queue<HoroVertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      HoroVertex u = q.front();
      q.pop();
      for (const HoroVertex& w : h.neighbors(u)) {
        if (dist.emplace(w, dist[u] + 1).second) q.push(w);
      }
    }
    return dist;
  };
  auto dx = bfs(x);
  auto dy = bfs(y);
  const int total = dx.at(y);
  std::vector<std::vector<HoroVertex>> out;
  std::vector<HoroVertex> cur{x};
  // DFS over the geodesic DAG
  std::function<void(const HoroVertex&)> walk = [&](const HoroVertex& u) {
    if (out.size() >= cap) throw SizeLimitError("geodesic enumeration exceeds cap");
    if (u == y) {
      out.push_back(cur);
      return;
    }
    for (const HoroVertex& w : h.neighbors(u)) {
      auto itx = dx.find(w);
      auto ity = dy.find(w);
      if (itx == dx.end() || ity == dy.end()) continue;
      if (itx->second == dx.at(u) + 1 && itx->second + ity->second == total) {
        cur.push_back(w);
        walk(w);
        cur.pop_back();
      }
    }
  };
  walk(x);
  return out;
}

int hausdorff_distance(const HoroballGraph& h, const std::vector<HoroVertex>& a,
                       const std::vector<HoroVertex>& b) {
  int worst = 0;
  for (const HoroVertex& u : a) {
    int best = kUnbounded;
    for (const HoroVertex& v : b) best = std::min(best, h.exact_distance(u, v));
    worst = std::max(worst, best);
  }
  for (const HoroVertex& v : b) {
    int best = kUnbounded;
    for (const HoroVertex& u : a) best = std::min(best, h.exact_distance(u, v));
    worst = std::max(worst, best);
  }
  return worst;
}

LemmaReport verify_geodesic_form(const HoroballGraph& h, const std::string& instance,
                                 const GeodesicFormParams& params) {
  LemmaReport rep;
  rep.lemma = "geodesic-form";
  rep.instance = instance;
  const int n = h.level_graph().vertex_count();
  const int levels = h.depth_cap() + 1;
  const int total = n * levels;
  auto id = [levels](const HoroVertex& v) { return v.base * levels + v.level; };
  auto of = [levels](int i) { return HoroVertex{i / levels, i % levels}; };

  // all-pairs truncated BFS distance matrix
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(total));
  {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
      for (const HoroVertex& w : h.neighbors(of(i))) adj[static_cast<std::size_t>(i)].push_back(id(w));
    }
    for (int s = 0; s < total; ++s) {
      rows[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(total), -1);
      std::vector<int>& dist = rows[static_cast<std::size_t>(s)];
      std::queue<int> q;
      dist[static_cast<std::size_t>(s)] = 0;
      q.push(s);
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (dist[static_cast<std::size_t>(w)] < 0) {
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
            q.push(w);
          }
        }
      }
    }
  }

  long long pairs = 0;
  int max_hausdorff = 0;
  for (int a = 0; a < total; ++a) {
    for (int b = a + 1; b < total; ++b) {
      if (pairs >= params.max_pairs) break;
      const HoroVertex x = of(a), y = of(b);
      if (!h.pair_certified(x, y)) {
        ++rep.skipped_uncertified;
        continue;
      }
      ++pairs;
      ++rep.checked;
      const int exact = h.exact_distance(x, y);
      // certified pairs: the truncated BFS value equals the untruncated one
      if (rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != exact) {
        rep.violation("bfs-mismatch", hv(h, x) + " / " + hv(h, y),
                      {{"bfs", rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]},
                       {"untruncated", exact}});
        continue;
      }
      std::vector<HoroVertex> constructed;
      try {
        constructed = h.standard_geodesic(x, y);
      } catch (const DepthCapError&) {
        ++rep.skipped_uncertified;
        continue;
      }
      if (path_length(constructed) != exact) {
        rep.violation("length-mismatch", hv(h, x) + " / " + hv(h, y),
                      {{"constructed", path_length(constructed)}, {"bfs", exact}});
        continue;
      }
      if (exact > params.hausdorff_max_distance) continue;

      if (params.literal_enumeration) {
        auto geos = enumerate_geodesics(h, x, y, params.max_geodesics_per_pair);
        for (const auto& g : geos) {
          const int hd = hausdorff_distance(h, g, constructed);
          max_hausdorff = std::max(max_hausdorff, hd);
          if (hd > params.hausdorff_bound) {
            rep.violation("hausdorff", hv(h, x) + " / " + hv(h, y), {{"hausdorff", hd}});
            break;
          }
        }
        continue;
      }

      // DAG form of the same check
      const std::vector<int>& dx = rows[static_cast<std::size_t>(a)];
      const std::vector<int>& dy = rows[static_cast<std::size_t>(b)];
      std::vector<int> dag;
      for (int i = 0; i < total; ++i) {
        if (dx[static_cast<std::size_t>(i)] >= 0 && dy[static_cast<std::size_t>(i)] >= 0 &&
            dx[static_cast<std::size_t>(i)] + dy[static_cast<std::size_t>(i)] == exact) {
          dag.push_back(i);
        }
      }
      // every vertex on any geodesic lies near the constructed path
      bool bad = false;
      for (int i : dag) {
        int best = kUnbounded;
        for (const HoroVertex& c : constructed) {
          best = std::min(best, h.exact_distance(of(i), c));
          if (best <= params.hausdorff_bound) break;
        }
        max_hausdorff = std::max(max_hausdorff, std::min(best, params.hausdorff_bound + 1));
        if (best > params.hausdorff_bound) {
          rep.violation("hausdorff", hv(h, x) + " / " + hv(h, y) + " via " + hv(h, of(i)),
                        {{"hausdorff", best}});
          bad = true;
          break;
        }
      }
      if (bad) continue;
      // no geodesic may dodge the neighbourhood of a constructed vertex:
      // reachability in the DAG restricted to the far region
      std::vector<std::vector<int>> dag_adj(dag.size());
      std::vector<int> index(static_cast<std::size_t>(total), -1);
      for (std::size_t i = 0; i < dag.size(); ++i) index[static_cast<std::size_t>(dag[i])] = static_cast<int>(i);
      for (std::size_t i = 0; i < dag.size(); ++i) {
        for (const HoroVertex& w : h.neighbors(of(dag[i]))) {
          const int wi = index[static_cast<std::size_t>(id(w))];
          if (wi >= 0 && dx[static_cast<std::size_t>(id(w))] == dx[static_cast<std::size_t>(dag[i])] + 1) {
            dag_adj[i].push_back(wi);
          }
        }
      }
      for (const HoroVertex& c : constructed) {
        // DFS from x through DAG vertices outside the ball around c
        std::vector<char> seen(dag.size(), 0);
        std::vector<int> stack;
        const int xi = index[static_cast<std::size_t>(a)];
        if (h.exact_distance(x, c) > params.hausdorff_bound) {
          stack.push_back(xi);
          seen[static_cast<std::size_t>(xi)] = 1;
        }
        bool dodged = false;
        while (!stack.empty()) {
          const int u = stack.back();
          stack.pop_back();
          if (dag[static_cast<std::size_t>(u)] == b) {
            dodged = true;
            break;
          }
          for (int w : dag_adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            if (h.exact_distance(of(dag[static_cast<std::size_t>(w)]), c) <= params.hausdorff_bound) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
        if (dodged) {
          rep.violation("hausdorff-dodge", hv(h, x) + " / " + hv(h, y) + " around " + hv(h, c), {});
          break;
        }
      }
    }
  }
  rep.constant("max_hausdorff", max_hausdorff);
  return rep;
}

}  // namespace cusp
